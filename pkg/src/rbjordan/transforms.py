"""Equivalence moves on operators: (anti)automorphisms of M_2, nonzero
scalars (weight 0) and the involution R -> -R - lam*id (nonzero weight).

Automorphisms of M_2(F)^(+) are taken to be the inner automorphisms of
M_2(F) and their composites with transpose (Herstein); nothing else is
searched for.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .field import FieldElement, FieldSpec
from .linalg import span_basis
from .matrix import Mat2
from .operator import Op4

Mat4 = tuple[tuple[int, ...], ...]


def _normalize(F: FieldSpec, entries: Sequence[int]) -> tuple[int, ...]:
    lead = next(c for c in entries if c)
    inv = F.inv(lead)
    return tuple(F.mul(inv, c) for c in entries)


@dataclass(frozen=True)
class GroupElement:
    """x -> g t(x) g^-1 where t is transpose when ``use_transpose`` is set.

    The matrix is stored normalized (first nonzero entry, row-major, is 1),
    so proportional matrices give equal elements.
    """

    matrix: Mat2
    use_transpose: bool = False

    def __post_init__(self) -> None:
        if not self.matrix.det():
            raise ValueError("group element needs an invertible matrix")
        norm = _normalize(self.matrix.field, self.matrix.entries)
        object.__setattr__(self, "matrix", Mat2(self.matrix.field, norm))

    @property
    def field(self) -> FieldSpec:
        return self.matrix.field

    def apply(self, x: Mat2) -> Mat2:
        g = self.matrix
        if self.use_transpose:
            x = x.transpose()
        return g @ x @ g.inverse()

    def apply_inverse(self, y: Mat2) -> Mat2:
        g = self.matrix
        x = g.inverse() @ y @ g
        return x.transpose() if self.use_transpose else x

    def then(self, other: GroupElement) -> GroupElement:
        """The element whose action on operators is act(other, act(self, R))."""
        # act(h, act(g, R)) = (psi_g psi_h)^-1 R (psi_g psi_h)
        g, h = self.matrix, other.matrix
        if self.use_transpose:
            # t(h y h^-1) = h^-T t(y) h^T
            m = g @ h.transpose().inverse()
        else:
            m = g @ h
        return GroupElement(m, self.use_transpose != other.use_transpose)

    def psi_matrix(self) -> Mat4:
        """Columns are the coordinates of psi(e_m)."""
        F = self.field
        cols = [self.apply(Mat2.unit(F, m)).entries for m in range(4)]
        return tuple(tuple(cols[m][k] for m in range(4)) for k in range(4))

    def psi_inverse_matrix(self) -> Mat4:
        F = self.field
        cols = [self.apply_inverse(Mat2.unit(F, m)).entries for m in range(4)]
        return tuple(tuple(cols[m][k] for m in range(4)) for k in range(4))

    def to_json(self) -> dict:
        return {"matrix": [self.matrix.to_json()[:2], self.matrix.to_json()[2:]], "transpose": self.use_transpose}


def identity_element(F: FieldSpec) -> GroupElement:
    return GroupElement(Mat2.identity(F))


def transpose_element(F: FieldSpec) -> GroupElement:
    return GroupElement(Mat2.identity(F), True)


def _apply4(F: FieldSpec, M: Mat4, x: Sequence[int]) -> tuple[int, ...]:
    out = []
    for k in range(4):
        acc = 0
        row = M[k]
        for m in range(4):
            if row[m] and x[m]:
                acc = F.add(acc, F.mul(row[m], x[m]))
        out.append(acc)
    return tuple(out)


def _conjugate(F: FieldSpec, psi: Mat4, psi_inv: Mat4, vec: Sequence[int]) -> tuple[int, ...]:
    out: list[int] = []
    for m in range(4):
        col = tuple(psi[k][m] for k in range(4))
        # R(psi(e_m)) = sum_b col[b] R(e_b)
        img = [0, 0, 0, 0]
        for b in range(4):
            if col[b]:
                for k in range(4):
                    c = vec[4 * b + k]
                    if c:
                        img[k] = F.add(img[k], F.mul(col[b], c))
        out.extend(_apply4(F, psi_inv, img))
    return tuple(out)


def act(g: GroupElement, R: Op4) -> Op4:
    """psi^-1 . R . psi."""
    if g.field != R.field:
        raise ValueError("group element and operator over different fields")
    return Op4(R.field, _conjugate(R.field, g.psi_matrix(), g.psi_inverse_matrix(), R.vec))


def act_on_subspace(g: GroupElement, basis: Iterable[Mat2]) -> tuple[tuple[int, ...], ...]:
    """Echelon basis of psi(V)."""
    basis = list(basis)
    if not basis:
        return ()
    F = basis[0].field
    return span_basis(F, [g.apply(b).entries for b in basis])


def scale_op(alpha: FieldElement | int, R: Op4) -> Op4:
    return R.scale(alpha)


def apply_phi(R: Op4, lam: FieldElement | int) -> Op4:
    """-R - lam*id."""
    F = R.field
    lam = F(lam).code
    return -R - Op4.scalar(F, lam)


@dataclass(frozen=True)
class GroupSpec:
    field: FieldSpec
    include_transpose: bool = True
    include_scalars: bool = False
    include_phi: bool = False

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "transpose": self.include_transpose,
            "scalars": self.include_scalars,
            "phi": self.include_phi,
        }


def _normalized_invertibles(F: FieldSpec) -> Iterator[tuple[int, ...]]:
    one = F.one
    q = F.q
    for a in range(q):
        for b in range(q):
            for c in range(q):
                for d in range(q):
                    e = (a, b, c, d)
                    lead = next((x for x in e if x), 0)
                    if lead != one:
                        continue
                    if F.sub(F.mul(a, d), F.mul(b, c)):
                        yield e


def enumerate_group(spec: GroupSpec) -> list[GroupElement]:
    """PGL_2(q) in lexicographic order of normalized matrices, then the
    transpose-composed copies when enabled."""
    return list(_group_cached(spec.field, spec.include_transpose))


@lru_cache(maxsize=None)
def _group_cached(F: FieldSpec, with_transpose: bool) -> tuple[GroupElement, ...]:
    mats = [Mat2(F, e) for e in _normalized_invertibles(F)]  # type: ignore[arg-type]
    out = [GroupElement(m) for m in mats]
    if with_transpose:
        out += [GroupElement(m, True) for m in mats]
    return tuple(out)


@lru_cache(maxsize=None)
def _psi_tables(F: FieldSpec, with_transpose: bool) -> tuple[tuple[Mat4, Mat4], ...]:
    return tuple((g.psi_matrix(), g.psi_inverse_matrix()) for g in _group_cached(F, with_transpose))


@dataclass(frozen=True)
class Move:
    """Conjugate by ``g``, then optionally apply phi, then scale."""

    g: GroupElement
    phi: bool = False
    scalar: Optional[int] = None  # code; None means 1

    def apply(self, R: Op4, lam: FieldElement | int = 0) -> Op4:
        out = act(self.g, R)
        if self.phi:
            out = apply_phi(out, lam)
        if self.scalar is not None and self.scalar != R.field.one:
            out = out.scale(FieldElement(R.field, self.scalar))
        return out

    def to_json(self) -> dict:
        F = self.g.field
        s = F.one if self.scalar is None else self.scalar
        return {**self.g.to_json(), "phi": self.phi, "scalar": FieldElement(F, s).to_json()}


def _scalars(spec: GroupSpec) -> list[int]:
    F = spec.field
    return list(F.nonzero()) if spec.include_scalars else [F.one]


def orbit_images(R: Op4, spec: GroupSpec, lam: FieldElement | int = 0) -> Iterator[tuple[tuple[int, ...], int, bool, int]]:
    """Yield (vec, group index, phi flag, scalar code) over every enabled move."""
    F = R.field
    if F != spec.field:
        raise ValueError("operator and group over different fields")
    lam_code = F(lam).code
    scalars = _scalars(spec)
    for gi, (psi, psi_inv) in enumerate(_psi_tables(F, spec.include_transpose)):
        conj = _conjugate(F, psi, psi_inv, R.vec)
        variants = [(conj, False)]
        if spec.include_phi:
            phi = tuple(F.neg(c) for c in conj)
            phi = tuple(F.sub(c, lam_code) if i % 5 == 0 else c for i, c in enumerate(phi))
            variants.append((phi, True))
        for vec, is_phi in variants:
            for s in scalars:
                yield (vec if s == F.one else tuple(F.mul(s, c) for c in vec)), gi, is_phi, s


def canonicalize_with_move(R: Op4, spec: GroupSpec, lam: FieldElement | int = 0) -> tuple[Op4, Move]:
    best = None
    for vec, gi, is_phi, s in orbit_images(R, spec, lam):
        if best is None or vec < best[0]:
            best = (vec, gi, is_phi, s)
    assert best is not None
    vec, gi, is_phi, s = best
    g = _group_cached(spec.field, spec.include_transpose)[gi]
    return Op4(R.field, vec), Move(g, is_phi, s)


def canonicalize(R: Op4, spec: GroupSpec, lam: FieldElement | int = 0) -> Op4:
    """Lexicographically least coefficient vector over the orbit of R."""
    if spec.field.deg == 1:
        return Op4(R.field, _canonical_vecs_numpy([R.vec], spec, R.field(lam).code)[0])
    return canonicalize_with_move(R, spec, lam)[0]


def _canonical_vecs_numpy(vecs: Sequence[Sequence[int]], spec: GroupSpec, lam_code: int) -> list[tuple[int, ...]]:
    """Vectorized orbit minimum for prime fields (q**16 fits in int64 for q <= 13)."""
    F = spec.field
    p = F.p
    if p > 13:
        return [canonicalize_with_move(Op4(F, tuple(v)), spec, lam_code)[0].vec for v in vecs]
    tables = _psi_tables(F, spec.include_transpose)
    psi = np.array([t[0] for t in tables], dtype=np.int64)  # (G, 4, 4)
    psi_inv = np.array([t[1] for t in tables], dtype=np.int64)
    scalars = np.array(_scalars(spec), dtype=np.int64)
    weights = p ** np.arange(15, -1, -1, dtype=np.int64)
    out: list[tuple[int, ...]] = []
    chunk = 2048
    for start in range(0, len(vecs), chunk):
        block = np.array(vecs[start : start + chunk], dtype=np.int64).reshape(-1, 4, 4)
        R = block.transpose(0, 2, 1)  # rows k, columns m
        # conj[n, g] = psi_inv[g] @ R[n] @ psi[g]
        tmp = np.einsum("nab,gbm->ngam", R, psi) % p
        conj = np.einsum("gka,ngam->ngkm", psi_inv, tmp) % p
        variants = [conj]
        if spec.include_phi:
            variants.append((-conj - lam_code * np.eye(4, dtype=np.int64)) % p)
        stacked = np.stack(variants, axis=2)  # (N, G, V, 4, 4)
        scaled = (stacked[:, :, :, None, :, :] * scalars[None, None, None, :, None, None]) % p
        flat = scaled.swapaxes(-1, -2).reshape(scaled.shape[0], -1, 16)  # vec order: columns
        keys = flat @ weights
        best = keys.argmin(axis=1)
        for n in range(flat.shape[0]):
            out.append(tuple(int(c) for c in flat[n, best[n]]))
    return out


def canonicalize_many(ops: Sequence[Op4], spec: GroupSpec, lam: FieldElement | int = 0) -> list[Op4]:
    if not ops:
        return []
    F = spec.field
    lam_code = F(lam).code
    if F.deg == 1:
        return [Op4(F, v) for v in _canonical_vecs_numpy([R.vec for R in ops], spec, lam_code)]
    return [canonicalize_with_move(R, spec, lam)[0] for R in ops]


@dataclass
class Orbit:
    canonical: Op4
    members: int
    representative_witnesses: list[tuple[Op4, Move]] = field(default_factory=list)

    def to_json(self) -> dict:
        from .io import op_to_literal

        return {"canonical": op_to_literal(self.canonical), "members": self.members}


def partition_orbits(
    ops: Iterable[Op4], spec: GroupSpec, lam: FieldElement | int = 0, witnesses: bool = False
) -> list[Orbit]:
    ops = sorted(set(ops))
    canon = canonicalize_many(ops, spec, lam)
    orbits: dict[tuple[int, ...], Orbit] = {}
    for R, C in zip(ops, canon):
        orb = orbits.get(C.vec)
        if orb is None:
            orb = orbits[C.vec] = Orbit(C, 0)
            if witnesses:
                C2, mv = canonicalize_with_move(R, spec, lam)
                assert C2 == C
                orb.representative_witnesses.append((R, mv))
        orb.members += 1
    return [orbits[k] for k in sorted(orbits)]
