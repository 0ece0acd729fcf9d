from __future__ import annotations

from itertools import product

import pytest

from rbjordan.catalog import (
    FAMILIES,
    AutoFamily,
    CatalogError,
    CatalogKey,
    ClosureError,
    DecompositionError,
    apply_moves,
    catalog_automorphism,
    catalog_operator,
    catalog_subalgebra,
    family_normal_form,
    make_splitting,
    subalgebra_basis,
)
from rbjordan.field import make_field
from rbjordan.identities import Problem, check_identity, subspace_closed
from rbjordan.linalg import rank, span_basis
from rbjordan.matrix import Mat2, ProductKind
from rbjordan.operator import Op4
from rbjordan.subalgebras import enumerate_subalgebras
from rbjordan.transforms import GroupSpec, act, canonicalize


def unit(F, n):
    return Mat2.unit(F, n)


def test_r1_over_f3(F3):
    R1 = catalog_operator("R1", F3)
    assert R1(unit(F3, "e11")) == unit(F3, "e12")
    assert R1(unit(F3, "e22")) == unit(F3, "e12").scale(F3(2))
    assert R1(unit(F3, "e12")).is_zero() and R1(unit(F3, "e21")).is_zero()
    assert catalog_operator("Z1", F3) == R1


def test_family_members(F3):
    fam3 = catalog_operator(CatalogKey("fam3", (F3(1), F3(1))), F3)
    assert fam3 == catalog_operator("R2", F3)
    fam4 = catalog_operator(CatalogKey("fam4", (F3(0), F3(1))), F3)
    assert fam4 == catalog_operator("A1", F3)


def test_catalog_errors(F3):
    with pytest.raises(CatalogError):
        catalog_operator("nope", F3)
    with pytest.raises(CatalogError):
        catalog_operator("fam3", F3)
    with pytest.raises(CatalogError):
        catalog_operator(CatalogKey("A1", (F3(1), F3(1))), F3)


@pytest.mark.parametrize("p,deg", [(3, 1), (5, 1), (7, 1), (3, 2)])
def test_catalog_identity_matrix(p, deg):
    F = make_field(p, deg)

    def passes(name, product, identity, w):
        return check_identity(catalog_operator(name, F), Problem.make(product, identity, w, F)).passed

    for n in ("A1", "A2", "A3", "A4"):
        assert passes(n, "associative", "rb", 0)
    for n in ("B1", "B2", "B3", "B4", "B5", "B6"):
        assert passes(n, "associative", "rb", 1)
    for n in ("R1", "R2"):
        assert passes(n, "jordan", "rb", 0)
        assert not passes(n, "associative", "rb", 0)
        assert passes(n, "associative", "symmetrized", 0)
    for n in ("S1", "S2"):
        assert passes(n, "jordan", "rb", 1)
        assert not passes(n, "associative", "rb", 1)
        assert passes(n, "associative", "symmetrized", 1)
    # operators that are both ordinary and symmetrized
    assert passes("A1", "associative", "symmetrized", 0)
    assert passes("B3", "associative", "symmetrized", 1)


def test_theorem4_case_operators_are_b1_b2_conjugates(F3):
    spec = GroupSpec(F3, include_transpose=True, include_phi=True)
    for alias, target in (("thm4-case1", "B1"), ("thm4-case2", "B2")):
        R = catalog_operator(alias, F3)
        assert check_identity(R, Problem.make("associative", "rb", 1, F3)).passed
        assert canonicalize(R, spec, 1) == canonicalize(catalog_operator(target, F3), spec, 1)


def test_make_splitting_examples(F3):
    A = [unit(F3, "e11"), unit(F3, "e12"), unit(F3, "e22")]
    B = [unit(F3, "e21")]
    assert make_splitting(A, B, F3(1), "associative") == catalog_operator("B3", F3)
    H2 = list(subalgebra_basis("H2", F3))
    assert make_splitting(H2, [unit(F3, "e12")], F3(1), "jordan") == catalog_operator("S1", F3)
    whole = [unit(F3, n) for n in ("e11", "e12", "e21", "e22")]
    assert make_splitting(whole, [], F3(2), "jordan") == Op4.zero(F3)


def test_make_splitting_errors(F3):
    with pytest.raises(DecompositionError):
        make_splitting([unit(F3, "e11")], [unit(F3, "e12")], F3(1), "jordan")
    with pytest.raises(ClosureError):
        # span(e12, e21) is not closed: e12 o e21 = E/2
        make_splitting([unit(F3, "e11"), unit(F3, "e22")], [unit(F3, "e12"), unit(F3, "e21")], F3(1), "jordan")


def test_splitting_operators_are_rb(F3):
    """Every complementary pair of subalgebras yields an RB operator of weight 1."""
    for kind in (ProductKind.ASSOCIATIVE, ProductKind.JORDAN):
        subs = enumerate_subalgebras(F3, kind)
        bases = [[m.entries for m in s.basis] for s in subs]
        pairs = 0
        for a in bases:
            for b in bases:
                if len(a) + len(b) == 4 and rank(F3, a + b) == 4:
                    pairs += 1
                    R = make_splitting([Mat2(F3, v) for v in a], [Mat2(F3, v) for v in b], F3(1), kind)
                    assert check_identity(R, Problem.make(kind, "rb", 1, F3)).passed
        assert pairs > 0


def test_automorphism_examples(F3, F5):
    psi = catalog_automorphism(AutoFamily("psi_r", F5(2)), F5)
    assert psi.apply(unit(F5, "e12")) == unit(F5, "e12").scale(F5(2))
    assert psi.apply(unit(F5, "e21")) == unit(F5, "e21").scale(F5(3))
    assert psi.apply(unit(F5, "e11")) == unit(F5, "e11")
    phi = catalog_automorphism(AutoFamily("varphi_t", F3(1)), F3)
    expected = unit(F3, "e21") - unit(F3, "e11") + unit(F3, "e22") - unit(F3, "e12")
    assert phi.apply(unit(F3, "e21")) == expected
    for F in (F3, F5):
        P1 = catalog_automorphism(AutoFamily("P_a", F(1)), F)
        assert P1.matrix == Mat2.identity(F)


def test_varphi_images_all_t(F5):
    e11, e12, e21, e22 = (unit(F5, n) for n in ("e11", "e12", "e21", "e22"))
    for t in range(5):
        g = catalog_automorphism(AutoFamily("varphi_t", F5(t)), F5)
        tt = F5(t)
        assert g.apply(e11) == e11 + e12.scale(tt)
        assert g.apply(e12) == e12
        assert g.apply(e21) == e21 - e11.scale(tt) + e22.scale(tt) - e12.scale(tt * tt)
        assert g.apply(e22) == e22 - e12.scale(tt)


def test_pa_fixes_h2(F5):
    h2 = span_basis(F5, [m.entries for m in subalgebra_basis("H2", F5)])
    admissible = 0
    for a in range(5):
        try:
            g = catalog_automorphism(AutoFamily("P_a", F5(a)), F5)
        except CatalogError:
            continue
        admissible += 1
        image = span_basis(F5, [g.apply(Mat2(F5, v)).entries for v in h2])
        assert image == h2
    assert admissible >= 2


def test_automorphism_errors(F3):
    with pytest.raises(CatalogError):
        catalog_automorphism(AutoFamily("psi_r", F3(0)), F3)
    with pytest.raises(CatalogError):
        catalog_automorphism(AutoFamily("bogus", F3(1)), F3)


@pytest.mark.parametrize("p,deg", [(3, 1), (5, 1), (7, 1), (3, 2)])
def test_family_normal_forms_replay(p, deg):
    F = make_field(p, deg)
    replayed = 0
    for fam in FAMILIES:
        for a, b in product(range(F.q), repeat=2):
            key = CatalogKey(fam, (F.elem(a), F.elem(b)))
            res = family_normal_form(key, F)
            if res is None:
                # only a missing square root may block the normalization
                assert fam == "fam3" and not F.is_square(F.div(b, a))
                continue
            name, moves = res
            target = Op4.zero(F) if name == "zero" else catalog_operator(name, F)
            assert apply_moves(catalog_operator(key, F), moves) == target
            replayed += 1
    assert replayed > 0


def test_subalgebra_examples(F3):
    h2 = catalog_subalgebra("H2", F3)
    assert h2.dim == 3
    assert span_basis(F3, [(1, 0, 0, 0), (0, 0, 0, 1), (0, 1, 1, 0)]) == h2.key
    le = catalog_subalgebra("L(E,e12)", F3)
    assert subspace_closed(F3, le.key, ProductKind.ASSOCIATIVE) is None
    assert catalog_subalgebra("L(e11)", F3).dim == 1
    with pytest.raises(CatalogError):
        subalgebra_basis("nope", F3)
