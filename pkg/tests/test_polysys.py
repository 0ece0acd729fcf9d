from __future__ import annotations

import json
import random

import numpy as np
import pytest

from rbjordan.catalog import catalog_operator
from rbjordan.identities import Problem, check_identity
from rbjordan.operator import Op4
from rbjordan.polysys import (
    BLOCK_ANSATZ,
    BLOCK_FREE,
    LAM,
    VAR_NAMES,
    MultiPoly,
    PolySysError,
    count_solutions,
    export_system,
    generate_system,
    locus_containment,
    reference_block_system,
    parse_poly,
    solution_sets_equal,
    vanishes_at,
    vanishing_mask,
)


def test_variable_naming():
    assert VAR_NAMES[:4] == ("a11", "a12", "a21", "a22")
    assert VAR_NAMES[15] == "d22"
    assert VAR_NAMES[LAM] == "lam"


def test_arithmetic_and_parse():
    x, y = MultiPoly.var("a11"), MultiPoly.var("b12")
    assert parse_poly("(a11 + b12)^2") == x * x + 2 * x * y + y * y
    assert parse_poly("a11 - a11") == MultiPoly()
    assert (x - y).normalized() == x - y
    assert (y - x).normalized() == x - y
    with pytest.raises(PolySysError):
        parse_poly("a11 / 2")
    with pytest.raises(PolySysError):
        parse_poly("zz")


def test_generated_systems_are_quadratic():
    for product in ("associative", "jordan", "commutator"):
        for identity in ("rb", "symmetrized"):
            sys = generate_system(product, identity, 1)
            assert sys and len(sys) <= 64
            assert max(f.degree for f in sys) == 2
            assert len(set(sys)) == len(sys)


def test_a1_and_zero_annihilate(F3):
    sys = generate_system("associative", "rb", 0)
    assert vanishes_at(sys, catalog_operator("A1", F3).vec, 3)
    for product in ("associative", "jordan", "commutator"):
        for identity in ("rb", "symmetrized"):
            for w in (0, 1, -1):
                assert vanishes_at(generate_system(product, identity, w), (0,) * 16, 5, w)


def test_symbolic_weight_specializes():
    sym = generate_system("jordan", "rb", "lam")
    assert any(LAM in f.variables() for f in sym)
    for w in (0, 1, 2):
        spec = [f.substitute({LAM: MultiPoly.const(w)}).normalized() for f in sym]
        direct = set(generate_system("jordan", "rb", w))
        assert {f for f in spec if f} == direct


def test_block_system_matches_reference(F3, F5):
    gen = generate_system("jordan", "rb", 0, BLOCK_ANSATZ)
    assert len(gen) <= 64
    for F in (F3, F5):
        equal, cex = solution_sets_equal(gen, reference_block_system(), F, BLOCK_FREE)
        assert equal and cex is None
    assert count_solutions(gen, F3, BLOCK_FREE) == 37
    assert count_solutions(gen, F5, BLOCK_FREE) == 153


def test_linear_relations_are_extra_generators(F3):
    gen = generate_system("jordan", "rb", 0, BLOCK_ANSATZ)
    rel = locus_containment(gen, reference_block_system(include_linear=False), F3, BLOCK_FREE)
    assert rel["first_in_second"] is True
    assert rel["second_in_first"] is False


def test_radical_insensitive(F3):
    x = [parse_poly("a11")]
    assert solution_sets_equal(x, [parse_poly("a11^2")], F3, ["a11"]) == (True, None)
    equal, cex = solution_sets_equal(x, [parse_poly("a11 - 1")], F3, ["a11"])
    assert not equal and cex in ({"a11": 0}, {"a11": 1})


def test_solution_budget_and_variables(F3, F9):
    with pytest.raises(PolySysError):
        solution_sets_equal([], [], F3, list(VAR_NAMES[:16]), budget=1000)
    with pytest.raises(PolySysError):
        solution_sets_equal([parse_poly("b11")], [], F3, ["a11"])
    with pytest.raises(PolySysError):
        solution_sets_equal([], [], F9, ["a11"])


def test_inconsistent_ansatz():
    with pytest.raises(PolySysError):
        generate_system("jordan", "rb", 0, [("a21", 0), ("a21", 1)])
    with pytest.raises(PolySysError):
        generate_system("jordan", "rb", 0, {"a21": "a22", "a22": 0})
    with pytest.raises(PolySysError):
        generate_system("jordan", "rb", 0, {"zz": 0})


def test_ansatz_to_other_variable():
    sys = generate_system("associative", "rb", 0, {"a21": "b12"})
    a21 = VAR_NAMES.index("a21")
    assert sys and all(a21 not in f.variables() for f in sys)


def test_export_formats():
    one = [parse_poly("a11*d12")]
    script = export_system(one)
    assert script.startswith("ring r = 0, (")
    assert "dp;\n" in script
    assert "a11*d12" in script
    assert export_system([]).endswith("ideal I = 0;\n")
    gen = generate_system("jordan", "rb", 0, BLOCK_ANSATZ)
    text = export_system(gen, variables=list(BLOCK_FREE))
    assert text == export_system(list(gen), variables=list(BLOCK_FREE))
    ideal_line = text.splitlines()[1]
    assert ideal_line.count(",") == len(gen) - 1
    doc = json.loads(export_system(one, "structured"))
    assert doc == [[{"exponents": [1] + [0] * 12 + [1, 0, 0], "coeff": 1}]]
    with pytest.raises(PolySysError):
        export_system(one, "latex")


def test_render_signs():
    assert parse_poly("-a11 + 2*b12 - 3").render() == "-a11 + 2*b12 - 3"
    assert parse_poly("a11^2 - a11").render() == "a11^2 - a11"


def _transpose_perm():
    # swapping e12 and e21 permutes both the operator argument (letters) and the coordinates
    letter = {"a": "a", "b": "c", "c": "b", "d": "d"}
    coord = {"11": "11", "12": "21", "21": "12", "22": "22"}
    perm = {}
    for i, name in enumerate(VAR_NAMES[:16]):
        perm[i] = MultiPoly.var(letter[name[0]] + coord[name[1:]])
    return perm


def test_transpose_symmetry():
    perm = _transpose_perm()
    for w in (0, 1):
        sys = generate_system("jordan", "rb", w)
        image = {f.substitute(perm).normalized() for f in sys}
        assert image == set(sys)


def test_evaluation_homomorphism(F5):
    rng = random.Random(2024)
    pool = generate_system("jordan", "symmetrized", 1)
    for _ in range(100):
        f, g = rng.choice(pool), rng.choice(pool)
        point = [rng.randrange(5) for _ in range(17)]
        assert (f + g).evaluate(point, 5) == (f.evaluate(point, 5) + g.evaluate(point, 5)) % 5
        assert (f * g).evaluate(point, 5) == f.evaluate(point, 5) * g.evaluate(point, 5) % 5


def test_vectorized_evaluation_matches_scalar(F3):
    rng = np.random.default_rng(0)
    sys = generate_system("associative", "symmetrized", 1)
    vecs = rng.integers(0, 3, size=(200, 16))
    mask = vanishing_mask(sys, vecs, 3, 1)
    for row, m in zip(vecs, mask):
        assert m == vanishes_at(sys, [int(c) for c in row], 3, 1)


@pytest.mark.parametrize("product", ["associative", "jordan"])
@pytest.mark.parametrize("identity", ["rb", "symmetrized"])
@pytest.mark.parametrize("w", [0, 1])
def test_soundness_link(F3, sets3, product, identity, w):
    sys = generate_system(product, identity, w)
    members = sets3.get(product, identity, w)
    vecs = np.array(sorted(members.vecs()), dtype=np.int64)
    assert vanishing_mask(sys, vecs, 3, w).all()
    rng = np.random.default_rng(w * 7 + len(product) + len(identity))
    randoms = rng.integers(0, 3, size=(3000, 16))
    mask = vanishing_mask(sys, randoms, 3, w)
    prob = Problem.make(product, identity, w, F3)
    for row, m in zip(randoms, mask):
        R = Op4(F3, tuple(int(c) for c in row))
        assert check_identity(R, prob).passed == bool(m)
