"""Named operators, parametric families, splitting operators, automorphism
families and subalgebra representatives for M_2(F) and M_2(F)^(+)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .field import FieldElement, FieldSpec
from .identities import subspace_closed
from .linalg import rank, solve_coordinates, span_basis
from .matrix import BASIS_NAMES, Mat2, ProductKind
from .operator import Op4
from .transforms import GroupElement, Move, act

# images as {unit: {unit: integer coefficient}}
_NAMED: dict[str, dict[str, dict[str, int]]] = {
    # weight 0 on M_2(F)
    "A1": {"e21": {"e12": 1}},
    "A2": {"e21": {"e11": 1}},
    "A3": {"e21": {"e11": 1}, "e22": {"e12": 1}},
    "A4": {"e21": {"e11": -1}, "e11": {"e12": 1}},
    # weight 1 on M_2(F)
    "B1": {"e11": {"e22": 1}, "e12": {"e12": -1}},
    "B2": {"e11": {"e11": -1}, "e12": {"e12": -1}},
    "B3": {"e21": {"e21": -1}},
    "B4": {"e21": {"e11": 1, "e21": -1}},
    "B5": {"e12": {"e11": 1, "e12": -1}, "e21": {"e22": 1, "e21": -1}},
    "B6": {"e11": {"e11": -1}, "e12": {"e12": -1}, "e22": {"e11": 1}},
    # weight 0 on M_2(F)^(+) only
    "R1": {"e11": {"e12": 1}, "e22": {"e12": -1}},
    "R2": {"e12": {"e11": 1}, "e21": {"e11": 1}},
    # weight 1 on M_2(F)^(+) only; R(e12 + e21) = 0 fixes the e21 image
    "S1": {"e12": {"e12": -1}, "e21": {"e12": 1}},
    "S2": {"e12": {"e11": -1, "e12": -1}, "e21": {"e11": 1, "e12": 1}},
    # intermediate weight-1 operators of the R(1) = e22 and R(1) = -e11 cases
    "thm4-case1": {"e11": {"e22": 1}, "e21": {"e21": -1}},
    "thm4-case2": {"e11": {"e11": -1}, "e12": {"e12": -1}},
}
_ALIASES = {"Z1": "R1"}
FAMILIES = ("fam3", "fam4")
NAMES = tuple(sorted(set(_NAMED) | set(_ALIASES) | set(FAMILIES)))

WEIGHT0_REPS = ("A1", "A2", "A3", "A4", "R1", "R2")
WEIGHT1_REPS = ("B1", "B2", "B3", "B4", "B5", "B6", "S1", "S2")


class CatalogError(ValueError):
    pass


class DecompositionError(CatalogError):
    """The two parts do not form a direct-sum decomposition."""


class ClosureError(CatalogError):
    """A part is not closed under the product."""


@dataclass(frozen=True)
class CatalogKey:
    name: str
    params: Optional[tuple[FieldElement, FieldElement]] = None


def _from_spec(F: FieldSpec, images: dict[str, dict[str, int]]) -> Op4:
    mats = []
    for name in BASIS_NAMES:
        coeffs = images.get(name, {})
        mats.append(Mat2(F, tuple(F.from_int(coeffs.get(u, 0)) for u in BASIS_NAMES)))  # type: ignore[arg-type]
    return Op4.from_images(mats)


def catalog_operator(key: CatalogKey | str, field: FieldSpec) -> Op4:
    if isinstance(key, str):
        key = CatalogKey(key)
    name = _ALIASES.get(key.name, key.name)
    F = field
    if name in FAMILIES:
        if key.params is None:
            raise CatalogError(f"{name} needs parameters (alpha, beta)")
        alpha, beta = (F(x).code for x in key.params)
        z = Mat2.zero(F)
        if name == "fam3":
            e11 = Mat2.unit(F, "e11")
            return Op4.from_images([z, e11.scale(F.elem(alpha)), e11.scale(F.elem(beta)), z])
        e12 = Mat2.unit(F, "e12")
        return Op4.from_images(
            [e12.scale(F.elem(alpha)), z, e12.scale(F.elem(beta)), e12.scale(F.elem(F.neg(alpha)))]
        )
    if key.params is not None:
        raise CatalogError(f"{key.name} takes no parameters")
    if name not in _NAMED:
        raise CatalogError(f"unknown catalog operator {key.name!r}")
    return _from_spec(F, _NAMED[name])


# -- splitting operators -------------------------------------------------


def make_splitting(
    A_basis: Sequence[Mat2], B_basis: Sequence[Mat2], lam: FieldElement | int, product: ProductKind | str
) -> Op4:
    """Zero on span(A), -lam on span(B)."""
    product = ProductKind(product)
    mats = list(A_basis) + list(B_basis)
    if not mats:
        raise DecompositionError("empty decomposition")
    F = mats[0].field
    a = [m.entries for m in A_basis]
    b = [m.entries for m in B_basis]
    if rank(F, a) != len(a) or rank(F, b) != len(b) or rank(F, a + b) != 4 or len(a) + len(b) != 4:
        raise DecompositionError("parts do not form a direct sum of the 4-dimensional space")
    for label, part in (("A", a), ("B", b)):
        bad = subspace_closed(F, part, product) if part else None
        if bad is not None:
            i, j, _ = bad
            raise ClosureError(
                f"part {label} is not closed: {Mat2(F, part[i])} * {Mat2(F, part[j])} leaves the span"  # type: ignore[arg-type]
            )
    lam_c = F(lam).code
    basis = a + b
    images = []
    for m in range(4):
        coords = solve_coordinates(F, basis, Mat2.unit(F, m).entries)
        assert coords is not None
        img = Mat2.zero(F)
        for c, v in zip(coords[len(a) :], b):
            img = img + Mat2(F, v).scale(F.elem(F.mul(F.neg(lam_c), c)))  # type: ignore[arg-type]
        images.append(img)
    return Op4.from_images(images)


# -- automorphism families -----------------------------------------------


@dataclass(frozen=True)
class AutoFamily:
    family: str  # psi_r | varphi_t | P_a
    param: FieldElement


def catalog_automorphism(fam: AutoFamily, field: FieldSpec) -> GroupElement:
    F = field
    x = F(fam.param).code
    if fam.family == "psi_r":
        # e12 -> r e12, e21 -> e21 / r
        if x == 0:
            raise CatalogError("psi_r needs r != 0")
        return GroupElement(Mat2(F, (F.one, 0, 0, F.inv(x))))
    if fam.family == "varphi_t":
        # g x g^-1 with g = [[1, -t], [0, 1]] sends e11 to e11 + t e12
        return GroupElement(Mat2(F, (F.one, F.neg(x), 0, F.one)))
    if fam.family == "P_a":
        s = F.sqrt(F.sub(F.one, F.mul(x, x)))
        if s is None:
            raise CatalogError("P_a needs 1 - a^2 to be a square")
        return GroupElement(Mat2(F, (x, s, F.neg(s), x)))
    raise CatalogError(f"unknown automorphism family {fam.family!r}")


def family_normal_form(key: CatalogKey, field: FieldSpec) -> Optional[tuple[str, list[Move]]]:
    """Replay the normalization of fam3/fam4 to a named operator.

    Returns (target name, moves) such that applying the moves in order maps
    the family member to ``catalog_operator(target)``; None when a needed
    square root is missing from the field.
    """
    F = field
    if key.name not in FAMILIES or key.params is None:
        raise CatalogError("normal forms exist only for fam3/fam4 members")
    alpha, beta = (F(x).code for x in key.params)
    ident = GroupElement(Mat2.identity(F))
    tr = GroupElement(Mat2.identity(F), True)
    one = F.one
    if alpha == 0 and beta == 0:
        return "zero", []
    if key.name == "fam3":
        if beta == 0:
            return "A2", [Move(tr, scalar=F.inv(alpha))]
        if alpha == 0:
            return "A2", [Move(ident, scalar=F.inv(beta))]
        b = F.div(beta, alpha)
        s = F.sqrt(b)
        if s is None:
            return None
        psi = catalog_automorphism(AutoFamily("psi_r", F.elem(s)), F)
        return "R2", [Move(ident, scalar=F.inv(alpha)), Move(psi, scalar=F.inv(s))]
    if alpha == 0:
        return "A1", [Move(ident, scalar=F.inv(beta))]
    steps = [Move(ident, scalar=F.inv(alpha))]
    b = F.div(beta, alpha)
    if b == 0:
        return "R1", steps
    psi = catalog_automorphism(AutoFamily("psi_r", F.elem(b)), F)
    half = F.elem(F.half)
    phi = catalog_automorphism(AutoFamily("varphi_t", half), F)
    steps += [Move(psi, scalar=b), Move(phi, scalar=one)]
    return "R1", steps


def apply_moves(R: Op4, moves: Sequence[Move], lam: FieldElement | int = 0) -> Op4:
    for mv in moves:
        R = mv.apply(R, lam)
    return R


# -- subalgebra representatives ------------------------------------------

_SUBALGEBRAS: dict[str, list[dict[str, int]]] = {
    "Fe11": [{"e11": 1}],
    "Fe12": [{"e12": 1}],
    "FE": [{"e11": 1, "e22": 1}],
    "L(e11,e12)": [{"e11": 1}, {"e12": 1}],
    "L(e11,e22)": [{"e11": 1}, {"e22": 1}],
    "L(E,e12)": [{"e11": 1, "e22": 1}, {"e12": 1}],
    "L(e11,e22,e12)": [{"e11": 1}, {"e22": 1}, {"e12": 1}],
    "H2": [{"e11": 1}, {"e22": 1}, {"e12": 1, "e21": 1}],
}
SUBALGEBRA_NAMES = tuple(_SUBALGEBRAS)
_SUB_ALIASES = {
    "L(e11)": "Fe11",
    "L(e12)": "Fe12",
    "L(E)": "FE",
    "H_2": "H2",
    "L(e11,e22,e12+e21)": "H2",
}


def subalgebra_basis(name: str, field: FieldSpec) -> tuple[Mat2, ...]:
    key = name.replace(" ", "").replace("₂", "2")
    key = _SUB_ALIASES.get(key, key)
    if key not in _SUBALGEBRAS:
        raise CatalogError(f"unknown subalgebra {name!r}")
    F = field
    vecs = [tuple(F.from_int(v.get(u, 0)) for u in BASIS_NAMES) for v in _SUBALGEBRAS[key]]
    return tuple(Mat2(F, v) for v in span_basis(F, vecs))  # type: ignore[arg-type]


def catalog_subalgebra(name: str, field: FieldSpec, product: ProductKind | str = ProductKind.JORDAN):
    from .subalgebras import Subalgebra

    return Subalgebra(subalgebra_basis(name, field), ProductKind(product))
