"""Exhaustive census of proper nonzero subalgebras of M_2(F_q) under a product."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator

from .field import FieldSpec
from .identities import subspace_closed
from .linalg import span_basis
from .matrix import Mat2, ProductKind
from .transforms import GroupSpec, act_on_subspace, enumerate_group


@dataclass(frozen=True)
class Subalgebra:
    basis: tuple[Mat2, ...]
    product: ProductKind

    def __post_init__(self) -> None:
        if not 1 <= len(self.basis) <= 3:
            raise ValueError("proper nonzero subalgebras have dimension 1..3")
        F = self.basis[0].field
        echelon = span_basis(F, [m.entries for m in self.basis])
        if len(echelon) != len(self.basis):
            raise ValueError("basis vectors are linearly dependent")
        object.__setattr__(self, "basis", tuple(Mat2(F, v) for v in echelon))
        if subspace_closed(F, echelon, self.product) is not None:
            raise ValueError(f"span is not closed under the {self.product.value} product")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(m.entries for m in self.basis)

    def to_json(self) -> list:
        return [m.to_json() for m in self.basis]


def echelon_subspaces(F: FieldSpec, dim: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """One reduced-echelon basis per dim-dimensional subspace of F^4."""
    q = F.q
    one = F.one
    for pivots in combinations(range(4), dim):
        # free slots: row r, column c > pivot r, c not a pivot column
        slots = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, 4) if c not in pivots]
        for values in product(range(q), repeat=len(slots)):
            rows = [[0] * 4 for _ in range(dim)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = one
            for (r, c), v in zip(slots, values):
                rows[r][c] = v
            yield tuple(tuple(r) for r in rows)


def enumerate_subalgebras(field: FieldSpec, product: ProductKind | str) -> list[Subalgebra]:
    kind = ProductKind(product)
    found = []
    for dim in (1, 2, 3):
        for basis in echelon_subspaces(field, dim):
            if subspace_closed(field, basis, kind) is None:
                found.append(basis)
    found.sort(key=lambda b: (len(b), b))
    return [Subalgebra(tuple(Mat2(field, v) for v in b), kind) for b in found]  # type: ignore[arg-type]


def subspace_canonical(basis, spec: GroupSpec) -> tuple[tuple[int, ...], ...]:
    """Least echelon basis over the images of the subspace under the group."""
    return min(act_on_subspace(g, basis) for g in enumerate_group(spec))


def subalgebra_orbits(subs: list[Subalgebra], spec: GroupSpec) -> dict[tuple, list[Subalgebra]]:
    orbits: dict[tuple, list[Subalgebra]] = {}
    for s in subs:
        orbits.setdefault(subspace_canonical(s.basis, spec), []).append(s)
    return dict(sorted(orbits.items(), key=lambda kv: (len(kv[0]), kv[0])))
