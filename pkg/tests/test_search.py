from __future__ import annotations

import pytest

from rbjordan.identities import Problem, check_identity
from rbjordan.matrix import Mat2
from rbjordan.operator import Op4
from rbjordan.search import SearchBudgetError, SearchOptions, enumerate_operators, verify_set

BLOCK_SPAN = ("e11", "e12")


def test_sets_contain_zero_and_are_sorted(sets3):
    zero = (0,) * 16
    for product in ("associative", "jordan"):
        for identity in ("rb", "symmetrized"):
            for w in (0, 1):
                s = sets3.get(product, identity, w)
                assert s.ops[0].vec == zero
                vecs = [R.vec for R in s.ops]
                assert vecs == sorted(set(vecs))
                assert verify_set(s) == []


def test_associative_inside_jordan(sets3):
    for w in (0, 1):
        assert sets3.get("associative", "rb", w).vecs() <= sets3.get("jordan", "rb", w).vecs()


def test_every_member_passes_and_neighbours_fail(F3, sets3):
    prob = Problem.make("jordan", "rb", 1, F3)
    members = sets3.get("jordan", "rb", 1).vecs()
    # flipping one coordinate of a member gives a vector whose status must match membership
    for vec in sorted(members)[::25]:
        for pos in range(16):
            v = list(vec)
            v[pos] = (v[pos] + 1) % 3
            R = Op4(F3, tuple(v))
            assert check_identity(R, prob).passed == (R.vec in members)


def test_image_constraint_matches_polynomial_count(F3, sets3):
    # operators with image inside span(e11, e12): 37 over F_3, the polynomial system's solution count
    span = tuple(Mat2.unit(F3, n) for n in BLOCK_SPAN)
    s = enumerate_operators(Problem.make("jordan", "rb", 0, F3), F3, SearchOptions(image_constraint=span))
    assert len(s) == 37
    full = sets3.get("jordan", "rb", 0)
    assert s.vecs() == {
        R.vec for R in full.ops if all(m.entries[2] == 0 and m.entries[3] == 0 for m in R.images)
    }


def test_parallel_matches_serial(F3, sets3):
    prob = Problem.make("associative", "symmetrized", 1, F3)
    par = enumerate_operators(prob, F3, SearchOptions(jobs=3))
    assert par.vecs() == sets3.get("associative", "symmetrized", 1).vecs()
    assert par.metadata["nodes"] == sets3.get("associative", "symmetrized", 1).metadata["nodes"]


def test_node_budget(F3):
    prob = Problem.make("jordan", "rb", 0, F3)
    with pytest.raises(SearchBudgetError):
        enumerate_operators(prob, F3, SearchOptions(node_budget=100))
    with pytest.raises(SearchBudgetError):
        enumerate_operators(prob, F3, SearchOptions(naive_oracle=True, node_budget=10**6))


def test_field_mismatch(F3, F5):
    with pytest.raises(ValueError):
        enumerate_operators(Problem.make("jordan", "rb", 0, F5), F3)


def test_naive_rejects_extension_fields(F9):
    with pytest.raises(ValueError):
        enumerate_operators(Problem.make("jordan", "rb", 0, F9), F9, SearchOptions(naive_oracle=True))


def test_header(F3, sets3):
    h = sets3.get("jordan", "rb", 0).header()
    assert h["count"] == len(sets3.get("jordan", "rb", 0))
    assert h["problem"] == {"product": "jordan", "identity": "rb", "weight": 0}


def test_image_constraint_over_f5(F5):
    span = tuple(Mat2.unit(F5, n) for n in BLOCK_SPAN)
    s = enumerate_operators(Problem.make("jordan", "rb", 0, F5), F5, SearchOptions(image_constraint=span))
    assert len(s) == 153
