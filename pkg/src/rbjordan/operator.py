"""Linear operators on the 4-dimensional space M_2(F)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .field import FieldElement, FieldSpec
from .linalg import Vector, nullspace, span_basis
from .matrix import BASIS_NAMES, Mat2


@dataclass(frozen=True)
class Op4:
    """Operator stored by the images of e11, e12, e21, e22.

    ``vec[4*m + k]`` is coordinate ``k`` of the image of basis element ``m``;
    this 16-tuple of codes is also the lexicographic sort key.
    """

    field: FieldSpec
    vec: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.vec) != 16:
            raise ValueError("an operator needs exactly 16 coefficients")

    @classmethod
    def from_images(cls, images: Sequence[Mat2]) -> Op4:
        if len(images) != 4:
            raise ValueError("need the images of all four matrix units")
        F = images[0].field
        if any(m.field != F for m in images):
            raise ValueError("images over different fields")
        return cls(F, tuple(c for m in images for c in m.entries))

    @classmethod
    def from_dict(cls, F: FieldSpec, images: dict) -> Op4:
        """``{"e21": [[0, 1], [0, 0]], ...}``; missing units map to zero."""
        unknown = set(images) - set(BASIS_NAMES)
        if unknown:
            raise ValueError(f"unknown basis names {sorted(unknown)}")
        mats = []
        for name in BASIS_NAMES:
            rows = images.get(name)
            mats.append(Mat2.zero(F) if rows is None else Mat2.of(F, rows))
        return cls.from_images(mats)

    @classmethod
    def zero(cls, F: FieldSpec) -> Op4:
        return cls(F, (0,) * 16)

    @classmethod
    def identity(cls, F: FieldSpec) -> Op4:
        return cls.scalar(F, F.one)

    @classmethod
    def scalar(cls, F: FieldSpec, c: int) -> Op4:
        return cls(F, tuple(c if k == m else 0 for m in range(4) for k in range(4)))

    @property
    def images(self) -> tuple[Mat2, Mat2, Mat2, Mat2]:
        v = self.vec
        return tuple(Mat2(self.field, v[4 * m : 4 * m + 4]) for m in range(4))  # type: ignore[return-value]

    def image(self, m: int) -> Mat2:
        return Mat2(self.field, self.vec[4 * m : 4 * m + 4])  # type: ignore[arg-type]

    def coeffs(self) -> list[FieldElement]:
        return [FieldElement(self.field, c) for c in self.vec]

    def apply_codes(self, x: Sequence[int]) -> tuple[int, int, int, int]:
        F, v = self.field, self.vec
        out = [0, 0, 0, 0]
        for m in range(4):
            xm = x[m]
            if xm:
                for k in range(4):
                    c = v[4 * m + k]
                    if c:
                        out[k] = F.add(out[k], F.mul(xm, c))
        return tuple(out)  # type: ignore[return-value]

    def __call__(self, x: Mat2) -> Mat2:
        return Mat2(self.field, self.apply_codes(x.entries))

    def compose(self, other: Op4) -> Op4:
        """self after other."""
        return Op4(self.field, tuple(c for m in range(4) for c in self.apply_codes(other.vec[4 * m : 4 * m + 4])))

    def __add__(self, other: Op4) -> Op4:
        F = self.field
        return Op4(F, tuple(F.add(a, b) for a, b in zip(self.vec, other.vec)))

    def __sub__(self, other: Op4) -> Op4:
        F = self.field
        return Op4(F, tuple(F.sub(a, b) for a, b in zip(self.vec, other.vec)))

    def __neg__(self) -> Op4:
        F = self.field
        return Op4(F, tuple(F.neg(a) for a in self.vec))

    def scale(self, c) -> Op4:
        F = self.field
        c = F(c).code
        return Op4(F, tuple(F.mul(c, a) for a in self.vec))

    def power(self, n: int) -> Op4:
        acc = Op4.identity(self.field)
        for _ in range(n):
            acc = self.compose(acc)
        return acc

    def is_zero(self) -> bool:
        return not any(self.vec)

    def __lt__(self, other: Op4) -> bool:
        return self.vec < other.vec

    def to_dict(self) -> dict:
        return {name: m.to_json() for name, m in zip(BASIS_NAMES, self.images)}

    def __repr__(self) -> str:
        parts = [f"{n}->{m.terms_str()}" for n, m in zip(BASIS_NAMES, self.images) if not m.is_zero()]
        return "Op4(" + ", ".join(parts) + ")" if parts else "Op4(0)"


class KernelImage(NamedTuple):
    ker_dim: int
    ker_basis: tuple[Mat2, ...]
    im_dim: int
    im_basis: tuple[Mat2, ...]


def op_rows(R: Op4) -> list[Vector]:
    """Matrix of R in the unit basis: row k, column m."""
    return [tuple(R.vec[4 * m + k] for m in range(4)) for k in range(4)]


def op_kernel_image(R: Op4) -> KernelImage:
    F = R.field
    ker = nullspace(F, op_rows(R), 4)
    im = span_basis(F, [m.entries for m in R.images])
    return KernelImage(
        len(ker),
        tuple(Mat2(F, v) for v in ker),  # type: ignore[arg-type]
        len(im),
        tuple(Mat2(F, v) for v in im),  # type: ignore[arg-type]
    )
