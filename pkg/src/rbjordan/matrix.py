"""2x2 matrices over a finite field and the three products on them."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .field import FieldElement, FieldSpec

BASIS_NAMES = ("e11", "e12", "e21", "e22")
# transpose swaps e12 and e21
TRANSPOSE_INDEX = (0, 2, 1, 3)


class ProductKind(str, Enum):
    ASSOCIATIVE = "associative"
    JORDAN = "jordan"
    COMMUTATOR = "commutator"


class MatrixClass(str, Enum):
    ZERO = "zero"
    NILPOTENT = "nilpotent"
    IDEMPOTENT = "idempotent"
    SCALAR = "scalar"
    INVERTIBLE_NONSCALAR = "invertible-nonscalar"
    DEGENERATE_OTHER = "degenerate-other"


Vec4 = tuple[int, int, int, int]


def assoc_product(F: FieldSpec, a: Sequence[int], b: Sequence[int]) -> Vec4:
    """Ordinary product of two matrices given as code 4-tuples (row-major)."""
    A, M = F.add, F.mul
    a11, a12, a21, a22 = a
    b11, b12, b21, b22 = b
    return (
        A(M(a11, b11), M(a12, b21)),
        A(M(a11, b12), M(a12, b22)),
        A(M(a21, b11), M(a22, b21)),
        A(M(a21, b12), M(a22, b22)),
    )


def product_codes(kind: ProductKind, F: FieldSpec, a: Sequence[int], b: Sequence[int]) -> Vec4:
    if kind is ProductKind.ASSOCIATIVE:
        return assoc_product(F, a, b)
    ab = assoc_product(F, a, b)
    ba = assoc_product(F, b, a)
    if kind is ProductKind.JORDAN:
        h = F.half
        return tuple(F.mul(h, F.add(x, y)) for x, y in zip(ab, ba))  # type: ignore[return-value]
    return tuple(F.sub(x, y) for x, y in zip(ab, ba))  # type: ignore[return-value]


def structure_constants(kind: ProductKind, F: FieldSpec) -> list[list[Vec4]]:
    """table[i][j] = coordinates of e_i * e_j."""
    units = [tuple(F.one if k == m else 0 for k in range(4)) for m in range(4)]
    return [[product_codes(kind, F, units[i], units[j]) for j in range(4)] for i in range(4)]


@dataclass(frozen=True)
class Mat2:
    field: FieldSpec
    entries: Vec4

    @classmethod
    def of(cls, F: FieldSpec, rows) -> Mat2:
        """Build from nested ints/FieldElements ``[[a, b], [c, d]]``."""
        flat = [x for row in rows for x in row]
        return cls(F, tuple(F(x).code for x in flat))  # type: ignore[arg-type]

    @classmethod
    def zero(cls, F: FieldSpec) -> Mat2:
        return cls(F, (0, 0, 0, 0))

    @classmethod
    def identity(cls, F: FieldSpec) -> Mat2:
        return cls(F, (F.one, 0, 0, F.one))

    @classmethod
    def unit(cls, F: FieldSpec, m: int | str) -> Mat2:
        if isinstance(m, str):
            m = BASIS_NAMES.index(m)
        return cls(F, tuple(F.one if k == m else 0 for k in range(4)))  # type: ignore[arg-type]

    def __getitem__(self, ij: tuple[int, int]) -> FieldElement:
        i, j = ij
        return FieldElement(self.field, self.entries[2 * (i - 1) + (j - 1)])

    def coeffs(self) -> list[FieldElement]:
        return [FieldElement(self.field, c) for c in self.entries]

    def __add__(self, other: Mat2) -> Mat2:
        F = self.field
        return Mat2(F, tuple(F.add(x, y) for x, y in zip(self.entries, other.entries)))  # type: ignore[arg-type]

    def __sub__(self, other: Mat2) -> Mat2:
        F = self.field
        return Mat2(F, tuple(F.sub(x, y) for x, y in zip(self.entries, other.entries)))  # type: ignore[arg-type]

    def __neg__(self) -> Mat2:
        F = self.field
        return Mat2(F, tuple(F.neg(x) for x in self.entries))  # type: ignore[arg-type]

    def scale(self, c) -> Mat2:
        F = self.field
        c = F(c).code
        return Mat2(F, tuple(F.mul(c, x) for x in self.entries))  # type: ignore[arg-type]

    def __matmul__(self, other: Mat2) -> Mat2:
        return Mat2(self.field, assoc_product(self.field, self.entries, other.entries))

    def transpose(self) -> Mat2:
        a, b, c, d = self.entries
        return Mat2(self.field, (a, c, b, d))

    def trace(self) -> FieldElement:
        return FieldElement(self.field, self.field.add(self.entries[0], self.entries[3]))

    def det(self) -> FieldElement:
        F = self.field
        a, b, c, d = self.entries
        return FieldElement(F, F.sub(F.mul(a, d), F.mul(b, c)))

    def inverse(self) -> Mat2:
        F = self.field
        det = self.det().code
        if det == 0:
            raise ZeroDivisionError("singular matrix")
        di = F.inv(det)
        a, b, c, d = self.entries
        return Mat2(F, (F.mul(d, di), F.neg(F.mul(b, di)), F.neg(F.mul(c, di)), F.mul(a, di)))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_scalar(self) -> bool:
        a, b, c, d = self.entries
        return b == 0 and c == 0 and a == d

    def to_json(self):
        return [FieldElement(self.field, c).to_json() for c in self.entries]

    def terms_str(self) -> str:
        terms = []
        for name, c in zip(BASIS_NAMES, self.entries):
            if c:
                coef = FieldElement(self.field, c).to_json()
                terms.append(name if c == self.field.one else f"{coef}*{name}")
        return " + ".join(terms) or "0"

    def __repr__(self) -> str:
        return f"Mat2({self.terms_str()})"


def mul(kind: ProductKind | str, a: Mat2, b: Mat2) -> Mat2:
    kind = ProductKind(kind)
    if a.field != b.field:
        raise ValueError("matrices over different fields")
    return Mat2(a.field, product_codes(kind, a.field, a.entries, b.entries))


def classify_matrix(m: Mat2) -> MatrixClass:
    if m.is_zero():
        return MatrixClass.ZERO
    if m.is_scalar():
        return MatrixClass.SCALAR
    sq = m @ m
    if sq.is_zero():
        return MatrixClass.NILPOTENT
    if sq == m:
        return MatrixClass.IDEMPOTENT
    if m.det():
        return MatrixClass.INVERTIBLE_NONSCALAR
    return MatrixClass.DEGENERATE_OTHER


@dataclass(frozen=True)
class UniPoly:
    """Univariate polynomial, coefficient codes lowest degree first, trimmed."""

    field: FieldSpec
    codes: tuple[int, ...]

    def __post_init__(self) -> None:
        codes = list(self.codes)
        while codes and codes[-1] == 0:
            codes.pop()
        object.__setattr__(self, "codes", tuple(codes))

    @classmethod
    def from_ints(cls, F: FieldSpec, coeffs: Iterable[int]) -> UniPoly:
        return cls(F, tuple(F.from_int(c) for c in coeffs))

    @property
    def coeffs(self) -> list[FieldElement]:
        return [FieldElement(self.field, c) for c in self.codes]

    @property
    def degree(self) -> int:
        return len(self.codes) - 1

    def is_monic(self) -> bool:
        return bool(self.codes) and self.codes[-1] == self.field.one

    def __mul__(self, other: UniPoly) -> UniPoly:
        F = self.field
        if not self.codes or not other.codes:
            return UniPoly(F, ())
        out = [0] * (len(self.codes) + len(other.codes) - 1)
        for i, a in enumerate(self.codes):
            for j, b in enumerate(other.codes):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
        return UniPoly(F, tuple(out))

    def evaluate_matrix(self, m: Mat2) -> Mat2:
        """Horner evaluation at a matrix argument."""
        F = m.field
        acc = Mat2.zero(F)
        for c in reversed(self.codes):
            acc = acc @ m + Mat2(F, (c, 0, 0, c))
        return acc

    def __repr__(self) -> str:
        if not self.codes:
            return "0"
        terms = []
        for k in range(len(self.codes) - 1, -1, -1):
            c = self.codes[k]
            if not c:
                continue
            coef = FieldElement(self.field, c).to_json()
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if not mono:
                terms.append(str(coef))
            else:
                terms.append(mono if c == self.field.one else f"{coef}*{mono}")
        return " + ".join(terms)


def minimal_polynomial(m: Mat2) -> UniPoly:
    F = m.field
    if m.is_scalar():
        return UniPoly(F, (F.neg(m.entries[0]), F.one))
    # Cayley-Hamilton: x^2 - tr x + det, and no linear polynomial kills a non-scalar
    return UniPoly(F, (m.det().code, F.neg(m.trace().code), F.one))
