from __future__ import annotations

import pytest

from rbjordan.catalog import catalog_operator, subalgebra_basis
from rbjordan.identities import (
    Problem,
    check_identity,
    check_jordan_axioms,
    derived_product,
    hrs_factors,
    hrs_match,
    image_commutes,
    nilpotency_exponents,
    star_product,
    structural_report,
)
from rbjordan.linalg import span_basis
from rbjordan.matrix import Mat2, MatrixClass, ProductKind, UniPoly, mul
from rbjordan.operator import Op4


def prob(F, product, identity, w):
    return Problem.make(product, identity, w, F)


def test_check_identity_examples(F3):
    assert check_identity(catalog_operator("A1", F3), prob(F3, "associative", "rb", 0)).passed
    R1 = catalog_operator("R1", F3)
    res = check_identity(R1, prob(F3, "associative", "rb", 0))
    assert not res.passed
    assert res.witness.args == ("e11", "e21")
    assert res.witness.lhs.is_zero()
    assert res.witness.rhs == Mat2.unit(F3, "e12")
    assert check_identity(R1, prob(F3, "jordan", "rb", 0)).passed
    assert check_identity(catalog_operator("R2", F3), prob(F3, "associative", "symmetrized", 0)).passed
    assert check_identity(catalog_operator("S1", F3), prob(F3, "associative", "symmetrized", 1)).passed


def test_zero_operator_passes_everything(F5):
    for product in ProductKind:
        for identity in ("rb", "symmetrized"):
            for w in range(5):
                assert check_identity(Op4.zero(F5), prob(F5, product, identity, w)).passed


def test_minus_weight_identity_is_rb(F5):
    # R = -lam id satisfies the RB identity of weight lam on an associative algebra
    for w in range(5):
        R = Op4.scalar(F5, F5.neg(F5.from_int(w)))
        assert check_identity(R, prob(F5, "associative", "rb", w)).passed


def test_weight_outside_field_rejected(F3):
    with pytest.raises(ValueError):
        Problem.make("jordan", "rb", 1)


def test_structural_report_r2(F3):
    rep = structural_report(catalog_operator("R2", F3), F3(0))
    assert rep.unit_in_image is False
    # image is F e11, kernel is span(e11, e22, e12 - e21)
    assert rep.ker_dim == 3
    assert rep.image_of_unit.is_zero()
    assert rep.image_of_unit_class is MatrixClass.ZERO
    assert rep.nilpotency_exponents == (2, 0)


def test_structural_report_s1_splitting(F3):
    rep = structural_report(catalog_operator("S1", F3), F3(1))
    assert rep.splitting is not None
    A, B = rep.splitting
    h2 = span_basis(F3, [m.entries for m in subalgebra_basis("H2", F3)])
    assert span_basis(F3, [m.entries for m in A]) == h2
    assert span_basis(F3, [m.entries for m in B]) == ((0, 1, 0, 0),)


def test_zero_splitting(F3):
    A, B = structural_report(Op4.zero(F3), F3(1)).splitting
    assert len(A) == 4 and B == ()


def test_report_json_roundtrip_keys(F3):
    doc = structural_report(catalog_operator("R2", F3), F3(0)).to_json()
    assert set(doc) >= {"unit_in_image", "ker_dim", "image_of_unit", "nilpotency_exponents", "hrs", "splitting"}


def test_hrs_examples(F3):
    x = UniPoly.from_ints(F3, [0, 1])
    assert hrs_match(x) == (0, 1)
    assert hrs_match(UniPoly.from_ints(F3, [0, -1, 1])) == (1, 1)
    assert hrs_match(UniPoly.from_ints(F3, [1, 0, 1])) is None
    assert hrs_factors(F3, 0, 0) == UniPoly.from_ints(F3, [1])
    # s = 0 stops at x - 1 without the factor x
    assert hrs_factors(F3, 1, 0) == UniPoly.from_ints(F3, [-1, 1])


def test_hrs_match_rejects_non_monic(F3):
    with pytest.raises(ValueError):
        hrs_match(UniPoly.from_ints(F3, [0, 2]))


def test_derived_product_examples(F3):
    t = derived_product(catalog_operator("R2", F3), F3(0))
    half = F3(2)
    expected = (Mat2.unit(F3, "e12") + Mat2.unit(F3, "e21")).scale(half)
    assert t.entry(1, 2) == expected
    assert check_jordan_axioms(t).passed
    zero = derived_product(Op4.zero(F3), F3(1))
    for i in range(4):
        for j in range(4):
            assert zero.entry(i, j) == mul("jordan", Mat2.unit(F3, i), Mat2.unit(F3, j))


def test_star_equals_derived_for_symmetrized(F3, sets3):
    for w in (0, 1):
        for R in sets3.get("associative", "symmetrized", w).ops[:60]:
            assert star_product(R, F3(w)) == derived_product(R, F3(w))


def test_jordan_axiom_check_catches_associative_table(F3):
    # the associative product table is not commutative
    t = derived_product(Op4.zero(F3), F3(1))
    assert check_jordan_axioms(t).passed
    from rbjordan.identities import ProductTable
    from rbjordan.matrix import structure_constants

    C = structure_constants(ProductKind.ASSOCIATIVE, F3)
    assoc = ProductTable(F3, tuple(tuple(tuple(C[i][j]) for j in range(4)) for i in range(4)))
    res = check_jordan_axioms(assoc)
    assert not res.passed and res.witness.args == ("e11", "e12")


def test_image_commutes_examples(F3):
    assert image_commutes(catalog_operator("R2", F3))
    assert not image_commutes(Op4.identity(F3))
    assert image_commutes(Op4.zero(F3))


def test_symmetrized_images_commute(sets3):
    for w in (0, 1):
        for R in sets3.get("associative", "symmetrized", w).ops:
            assert image_commutes(R)


def test_nilpotency_exponents_none_when_absent(F3):
    # the identity operator at weight 0: R^k never vanishes
    assert nilpotency_exponents(Op4.identity(F3), F3(0)) is None
    assert nilpotency_exponents(Op4.identity(F3), F3(2)) == (0, 1)
