"""Finite fields F_p and F_{p^2} for odd primes p.

Elements are carried around as small integer *codes*: ``c0`` for a prime
field and ``c0 * p + c1`` for ``c0 + c1*w`` in the quadratic extension,
``w^2 = nonresidue``.  Integer order on codes is lexicographic order on the
canonical coordinate tuples, which is what every canonical form in the
package relies on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Optional


class FieldError(ValueError):
    """Invalid field parameters."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def _is_square_mod(a: int, p: int) -> bool:
    a %= p
    return a == 0 or pow(a, (p - 1) // 2, p) == 1


@dataclass(frozen=True)
class FieldSpec:
    p: int
    deg: int = 1
    nonresidue: Optional[int] = None

    def __post_init__(self) -> None:
        if self.p == 2:
            raise FieldError("characteristic two is not supported")
        if not is_prime(self.p):
            raise FieldError(f"modulus {self.p} is not prime")
        if self.deg not in (1, 2):
            raise FieldError(f"unsupported extension degree {self.deg}")
        if self.deg == 2:
            if self.nonresidue is None or _is_square_mod(self.nonresidue, self.p):
                raise FieldError(f"{self.nonresidue} is not a non-residue mod {self.p}")
        elif self.nonresidue is not None:
            raise FieldError("nonresidue is only meaningful for deg = 2")

    # -- basic shape -----------------------------------------------------

    @property
    def q(self) -> int:
        return self.p**self.deg

    def __str__(self) -> str:
        return f"F_{self.q}"

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    # -- conversions -----------------------------------------------------

    def coords(self, a: int) -> tuple[int, ...]:
        if self.deg == 1:
            return (a,)
        return divmod(a, self.p)

    def from_coords(self, coords) -> int:
        if self.deg == 1:
            (c0,) = coords
            return c0 % self.p
        c0, c1 = coords
        return (c0 % self.p) * self.p + (c1 % self.p)

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` in the field."""
        n %= self.p
        return n * self.p if self.deg == 2 else n

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise FieldError("element belongs to another field")
            return value
        if isinstance(value, int):
            return FieldElement(self, self.from_int(value))
        return FieldElement(self, self.from_coords(value))

    def elem(self, code: int) -> "FieldElement":
        return FieldElement(self, code)

    # -- arithmetic on codes ---------------------------------------------

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return self.from_int(1)

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.deg == 1:
            return (a + b) % p
        a0, a1 = divmod(a, p)
        b0, b1 = divmod(b, p)
        return ((a0 + b0) % p) * p + (a1 + b1) % p

    def neg(self, a: int) -> int:
        p = self.p
        if self.deg == 1:
            return -a % p
        a0, a1 = divmod(a, p)
        return (-a0 % p) * p + (-a1 % p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        p = self.p
        if self.deg == 1:
            return a * b % p
        a0, a1 = divmod(a, p)
        b0, b1 = divmod(b, p)
        c0 = (a0 * b0 + self.nonresidue * a1 * b1) % p
        c1 = (a0 * b1 + a1 * b0) % p
        return c0 * p + c1

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        p = self.p
        if self.deg == 1:
            return pow(a, p - 2, p)
        a0, a1 = divmod(a, p)
        norm = (a0 * a0 - self.nonresidue * a1 * a1) % p
        ninv = pow(norm, p - 2, p)
        return (a0 * ninv % p) * p + (-a1 * ninv % p)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    @cached_property
    def half(self) -> int:
        return self.inv(self.from_int(2))

    # -- lookup tables for the exhaustive loops --------------------------

    @cached_property
    def add_table(self) -> list[list[int]]:
        return [[self.add(a, b) for b in range(self.q)] for a in range(self.q)]

    @cached_property
    def mul_table(self) -> list[list[int]]:
        return [[self.mul(a, b) for b in range(self.q)] for a in range(self.q)]

    @cached_property
    def neg_table(self) -> list[int]:
        return [self.neg(a) for a in range(self.q)]

    @cached_property
    def inv_table(self) -> list[int]:
        return [0] + [self.inv(a) for a in range(1, self.q)]

    @cached_property
    def _sqrt_map(self) -> dict[int, int]:
        roots: dict[int, int] = {}
        for y in range(self.q):
            y2 = self.mul(y, y)
            # smaller code of {y, -y} is the lexicographically smaller root
            if y2 not in roots or y < roots[y2]:
                roots[y2] = y
        return roots

    def sqrt(self, a: int) -> Optional[int]:
        return self._sqrt_map.get(a)

    def is_square(self, a: int) -> bool:
        return a in self._sqrt_map

    def to_json(self):
        return {"p": self.p, "deg": self.deg}


@dataclass(frozen=True, order=False)
class FieldElement:
    spec: FieldSpec = field(compare=True)
    code: int = 0

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.coords(self.code)

    def _code(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldError("mixed-field arithmetic")
            return other.code
        return self.spec.from_int(int(other))

    def __add__(self, other) -> FieldElement:
        return FieldElement(self.spec, self.spec.add(self.code, self._code(other)))

    __radd__ = __add__

    def __sub__(self, other) -> FieldElement:
        return FieldElement(self.spec, self.spec.sub(self.code, self._code(other)))

    def __rsub__(self, other) -> FieldElement:
        return FieldElement(self.spec, self.spec.sub(self._code(other), self.code))

    def __mul__(self, other) -> FieldElement:
        return FieldElement(self.spec, self.spec.mul(self.code, self._code(other)))

    __rmul__ = __mul__

    def __truediv__(self, other) -> FieldElement:
        return FieldElement(self.spec, self.spec.div(self.code, self._code(other)))

    def __neg__(self) -> FieldElement:
        return FieldElement(self.spec, self.spec.neg(self.code))

    def __pow__(self, n: int) -> FieldElement:
        if n < 0:
            return FieldElement(self.spec, self.spec.inv(self.code)) ** (-n)
        acc, base = self.spec.one, self.code
        while n:
            if n & 1:
                acc = self.spec.mul(acc, base)
            base = self.spec.mul(base, base)
            n >>= 1
        return FieldElement(self.spec, acc)

    def inverse(self) -> FieldElement:
        return FieldElement(self.spec, self.spec.inv(self.code))

    def is_zero(self) -> bool:
        return self.code == 0

    def __bool__(self) -> bool:
        return self.code != 0

    def __int__(self) -> int:
        if self.spec.deg == 2 and self.coeffs[1]:
            raise TypeError("element lies outside the prime field")
        return self.coeffs[0]

    def to_json(self):
        return self.coeffs[0] if self.spec.deg == 1 else list(self.coeffs)

    def __repr__(self) -> str:
        if self.spec.deg == 1:
            return f"{self.code} (mod {self.spec.p})"
        c0, c1 = self.coeffs
        return f"{c0}+{c1}w (F_{self.spec.q})"


def make_field(p: int, deg: int = 1) -> FieldSpec:
    """F_p (deg 1) or F_{p^2} built with the smallest quadratic non-residue."""
    if p == 2:
        raise FieldError("characteristic two is not supported")
    if not is_prime(p):
        raise FieldError(f"modulus {p} is not prime")
    if deg == 1:
        return FieldSpec(p, 1)
    if deg == 2:
        n = next(a for a in range(2, p) if not _is_square_mod(a, p))
        return FieldSpec(p, 2, n)
    raise FieldError(f"unsupported extension degree {deg}")


def sqrt_in_field(x: FieldElement) -> Optional[FieldElement]:
    root = x.spec.sqrt(x.code)
    return None if root is None else FieldElement(x.spec, root)


def iter_elements(spec: FieldSpec) -> Iterator[FieldElement]:
    for code in spec.elements():
        yield FieldElement(spec, code)
