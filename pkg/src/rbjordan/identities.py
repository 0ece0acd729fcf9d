"""Checkers for the Rota-Baxter identity, its symmetrized form, and the
structural facts that follow from them."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import permutations
from typing import Optional, Sequence

from .field import FieldElement, FieldSpec
from .linalg import in_span, nullspace
from .matrix import BASIS_NAMES, Mat2, MatrixClass, ProductKind, UniPoly, classify_matrix, minimal_polynomial, product_codes
from .operator import Op4, op_kernel_image, op_rows


class IdentityKind(str, Enum):
    RB = "rb"
    SYMMETRIZED = "symmetrized"


@dataclass(frozen=True)
class Problem:
    product: ProductKind
    identity: IdentityKind
    weight: FieldElement

    @classmethod
    def make(cls, product, identity, weight: int | FieldElement, field: Optional[FieldSpec] = None) -> Problem:
        if not isinstance(weight, FieldElement):
            if field is None:
                raise ValueError("an integer weight needs a field")
            weight = field(weight)
        return cls(ProductKind(product), IdentityKind(identity), weight)

    @property
    def field(self) -> FieldSpec:
        return self.weight.spec

    def to_json(self) -> dict:
        return {"product": self.product.value, "identity": self.identity.value, "weight": self.weight.to_json()}

    def __str__(self) -> str:
        return f"({self.product.value}, {self.identity.value}, {self.weight.to_json()})"


@dataclass(frozen=True)
class Witness:
    args: tuple[str, ...]
    lhs: Mat2
    rhs: Mat2

    def to_json(self) -> dict:
        return {"args": list(self.args), "lhs": self.lhs.to_json(), "rhs": self.rhs.to_json()}


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    witness: Optional[Witness] = None

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        return {"passed": self.passed, "witness": None if self.witness is None else self.witness.to_json()}


def _vadd(F: FieldSpec, *vs: Sequence[int]) -> tuple[int, ...]:
    out = [0, 0, 0, 0]
    for v in vs:
        for k in range(4):
            if v[k]:
                out[k] = F.add(out[k], v[k])
    return tuple(out)


def _vscale(F: FieldSpec, c: int, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(F.mul(c, x) for x in v)


def identity_sides(R: Op4, prob: Problem, i: int, j: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Both sides of the chosen identity at the basis pair (e_i, e_j), as codes."""
    F, kind, lam = R.field, prob.product, prob.weight.code
    P = lambda a, b: product_codes(kind, F, a, b)  # noqa: E731
    ei = Mat2.unit(F, i).entries
    ej = Mat2.unit(F, j).entries
    xi = R.vec[4 * i : 4 * i + 4]
    xj = R.vec[4 * j : 4 * j + 4]
    if prob.identity is IdentityKind.RB:
        lhs = P(xi, xj)
        arg = _vadd(F, P(xi, ej), P(ei, xj), _vscale(F, lam, P(ei, ej)))
    else:
        lhs = _vscale(F, F.from_int(2), P(xi, xj))
        arg = _vadd(
            F,
            P(xi, ej),
            P(ei, xj),
            P(ej, xi),
            P(xj, ei),
            _vscale(F, lam, P(ei, ej)),
            _vscale(F, lam, P(ej, ei)),
        )
    return lhs, R.apply_codes(arg)


def check_identity(R: Op4, prob: Problem) -> CheckResult:
    if prob.field != R.field:
        raise ValueError("weight and operator live in different fields")
    for i in range(4):
        for j in range(4):
            lhs, rhs = identity_sides(R, prob, i, j)
            if lhs != rhs:
                F = R.field
                return CheckResult(False, Witness((BASIS_NAMES[i], BASIS_NAMES[j]), Mat2(F, lhs), Mat2(F, rhs)))
    return CheckResult(True)


def image_commutes(R: Op4) -> bool:
    ims = R.images
    return all(ims[i] @ ims[j] == ims[j] @ ims[i] for i in range(4) for j in range(i + 1, 4))


# -- structural report ---------------------------------------------------


def hrs_factors(F: FieldSpec, r: int, s: int) -> UniPoly:
    """(x - r)(x - r + 1)...(x + s - 1): factors x + j for j = -r .. s-1."""
    acc = UniPoly(F, (F.one,))
    for j in range(-r, s):
        acc = acc * UniPoly(F, (F.from_int(j), F.one))
    return acc


def hrs_match(p: UniPoly) -> Optional[tuple[int, int]]:
    """(r, s) with p equal to H_{r,s} reduced into the field; smallest r wins ties.

    s = 0 means the chain stops at x - 1 without the factor x.
    """
    if not p.is_monic():
        raise ValueError("hrs_match expects a monic polynomial")
    d = p.degree
    for r in range(d + 1):
        if hrs_factors(p.field, r, d - r) == p:
            return r, d - r
    return None


@dataclass(frozen=True)
class StructuralReport:
    unit_in_image: bool
    ker_dim: int
    image_of_unit: Mat2
    image_of_unit_class: MatrixClass
    nilpotency_exponents: Optional[tuple[int, int]]
    min_poly_of_unit: UniPoly
    hrs: Optional[tuple[int, int]]
    splitting: Optional[tuple[tuple[Mat2, ...], tuple[Mat2, ...]]]

    def to_json(self) -> dict:
        return {
            "unit_in_image": self.unit_in_image,
            "ker_dim": self.ker_dim,
            "image_of_unit": self.image_of_unit.to_json(),
            "image_of_unit_class": self.image_of_unit_class.value,
            "nilpotency_exponents": None if self.nilpotency_exponents is None else list(self.nilpotency_exponents),
            "min_poly_of_unit": [c.to_json() for c in self.min_poly_of_unit.coeffs],
            "hrs": None if self.hrs is None else list(self.hrs),
            "splitting": None
            if self.splitting is None
            else [[m.to_json() for m in part] for part in self.splitting],
        }


def nilpotency_exponents(R: Op4, lam: FieldElement, bound: int = 4) -> Optional[tuple[int, int]]:
    """Smallest k + l (ties: larger k) with R^k (R + lam id)^l = 0."""
    shifted = R + Op4.scalar(R.field, lam.code)
    rpow = [R.power(k) for k in range(bound + 1)]
    spow = [shifted.power(l) for l in range(bound + 1)]
    for total in range(2 * bound + 1):
        for k in range(min(total, bound), -1, -1):
            l = total - k
            if l > bound:
                break
            if rpow[k].compose(spow[l]).is_zero():
                return k, l
    return None


def subspace_closed(F: FieldSpec, basis: Sequence[Sequence[int]], kind: ProductKind):
    """First basis pair whose product leaves the span, or None if closed."""
    for a in range(len(basis)):
        for b in range(len(basis)):
            if kind is not ProductKind.ASSOCIATIVE and b < a:
                continue  # jordan/commutator products are (anti)symmetric
            prod = product_codes(kind, F, basis[a], basis[b])
            if not in_span(F, basis, prod):
                return a, b, prod
    return None


def splitting_decomposition(R: Op4, lam: FieldElement):
    """Eigenspaces (ker R, ker(R + lam)) when R is a splitting operator, else None."""
    F = R.field
    ker0 = nullspace(F, op_rows(R), 4)
    if lam.code == 0:
        parts = (ker0, []) if len(ker0) == 4 else None
    else:
        shifted = R + Op4.scalar(F, lam.code)
        ker1 = nullspace(F, op_rows(shifted), 4)
        parts = (ker0, ker1) if len(ker0) + len(ker1) == 4 else None
    if parts is None:
        return None
    for part in parts:
        if part and subspace_closed(F, part, ProductKind.JORDAN) is not None:
            return None
    return tuple(tuple(Mat2(F, v) for v in part) for part in parts)


def structural_report(R: Op4, lam: FieldElement) -> StructuralReport:
    F = R.field
    ki = op_kernel_image(R)
    unit = Mat2.identity(F)
    r1 = R(unit)
    mp = minimal_polynomial(r1)
    return StructuralReport(
        unit_in_image=in_span(F, [m.entries for m in ki.im_basis], unit.entries),
        ker_dim=ki.ker_dim,
        image_of_unit=r1,
        image_of_unit_class=classify_matrix(r1),
        nilpotency_exponents=nilpotency_exponents(R, lam),
        min_poly_of_unit=mp,
        hrs=hrs_match(mp),
        splitting=splitting_decomposition(R, lam),
    )


# -- derived Jordan product ----------------------------------------------


@dataclass(frozen=True)
class ProductTable:
    field: FieldSpec
    table: tuple[tuple[tuple[int, ...], ...], ...]

    def entry(self, i: int, j: int) -> Mat2:
        return Mat2(self.field, self.table[i][j])  # type: ignore[arg-type]

    def multiply(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        F = self.field
        out = [0, 0, 0, 0]
        for i in range(4):
            if not a[i]:
                continue
            for j in range(4):
                if not b[j]:
                    continue
                c = F.mul(a[i], b[j])
                t = self.table[i][j]
                for k in range(4):
                    if t[k]:
                        out[k] = F.add(out[k], F.mul(c, t[k]))
        return tuple(out)


def derived_product(R: Op4, lam: FieldElement) -> ProductTable:
    """x*y = (R(x)y + xR(y) + yR(x) + R(y)x + lam xy + lam yx) / 2."""
    F = R.field
    A = lambda a, b: product_codes(ProductKind.ASSOCIATIVE, F, a, b)  # noqa: E731
    rows = []
    for i in range(4):
        row = []
        for j in range(4):
            ei, ej = Mat2.unit(F, i).entries, Mat2.unit(F, j).entries
            ri, rj = R.vec[4 * i : 4 * i + 4], R.vec[4 * j : 4 * j + 4]
            s = _vadd(F, A(ri, ej), A(ei, rj), A(ej, ri), A(rj, ei), _vscale(F, lam.code, A(ei, ej)), _vscale(F, lam.code, A(ej, ei)))
            row.append(_vscale(F, F.half, s))
        rows.append(tuple(row))
    return ProductTable(F, tuple(rows))


def star_product(R: Op4, lam: FieldElement) -> ProductTable:
    """x (star) y = R(x)oy + xoR(y) + lam xoy with o the Jordan product."""
    F = R.field
    J = lambda a, b: product_codes(ProductKind.JORDAN, F, a, b)  # noqa: E731
    rows = []
    for i in range(4):
        row = []
        for j in range(4):
            ei, ej = Mat2.unit(F, i).entries, Mat2.unit(F, j).entries
            ri, rj = R.vec[4 * i : 4 * i + 4], R.vec[4 * j : 4 * j + 4]
            row.append(_vadd(F, J(ri, ej), J(ei, rj), _vscale(F, lam.code, J(ei, ej))))
        rows.append(tuple(row))
    return ProductTable(F, tuple(rows))


def check_jordan_axioms(t: ProductTable) -> CheckResult:
    """Commutativity plus ((x*x)*y)*x = (x*x)*(y*x) as a polynomial identity.

    The cubic-in-x identity vanishes identically iff, for every monomial
    x_i x_j x_k, the sum over the distinct orderings of (i, j, k) vanishes.
    This avoids dividing by 3! so it is exact in characteristic 3 too.
    """
    F = t.field
    units = [Mat2.unit(F, m).entries for m in range(4)]
    for i in range(4):
        for j in range(i + 1, 4):
            if t.table[i][j] != t.table[j][i]:
                return CheckResult(
                    False, Witness((BASIS_NAMES[i], BASIS_NAMES[j]), t.entry(i, j), t.entry(j, i))
                )
    star = t.multiply
    for i in range(4):
        for j in range(i, 4):
            for k in range(j, 4):
                orders = set(permutations((i, j, k)))
                for y in range(4):
                    lhs = (0, 0, 0, 0)
                    rhs = (0, 0, 0, 0)
                    for a, b, c in sorted(orders):
                        ab = star(units[a], units[b])
                        lhs = _vadd(F, lhs, star(star(ab, units[y]), units[c]))
                        rhs = _vadd(F, rhs, star(ab, star(units[y], units[c])))
                    if lhs != rhs:
                        names = tuple(BASIS_NAMES[m] for m in (i, j, k, y))
                        return CheckResult(False, Witness(names, Mat2(F, lhs), Mat2(F, rhs)))  # type: ignore[arg-type]
    return CheckResult(True)
