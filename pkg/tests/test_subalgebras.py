from __future__ import annotations

import pytest

from rbjordan.catalog import SUBALGEBRA_NAMES, catalog_subalgebra
from rbjordan.identities import subspace_closed
from rbjordan.matrix import Mat2, ProductKind
from rbjordan.subalgebras import Subalgebra, echelon_subspaces, enumerate_subalgebras, subalgebra_orbits, subspace_canonical
from rbjordan.transforms import GroupSpec


def test_subspace_counts(F3):
    # Gaussian binomials [4 choose k]_3
    assert [sum(1 for _ in echelon_subspaces(F3, d)) for d in (1, 2, 3)] == [40, 130, 40]


def test_jordan_census_contents(F3):
    subs = enumerate_subalgebras(F3, ProductKind.JORDAN)
    keys = {s.key for s in subs}
    for name in ("H2", "Fe11", "FE", "Fe12"):
        assert catalog_subalgebra(name, F3).key in keys
    for s in subs:
        assert subspace_closed(F3, s.key, ProductKind.JORDAN) is None


def test_associative_census_lacks_h2(F3):
    keys = {s.key for s in enumerate_subalgebras(F3, ProductKind.ASSOCIATIVE)}
    assert catalog_subalgebra("H2", F3).key not in keys
    assert catalog_subalgebra("L(E,e12)", F3).key in keys


def test_associative_subalgebras_are_jordan(F3):
    jordan = {s.key for s in enumerate_subalgebras(F3, ProductKind.JORDAN)}
    assoc = {s.key for s in enumerate_subalgebras(F3, ProductKind.ASSOCIATIVE)}
    assert assoc <= jordan


def test_h2_associative_witness(F3):
    basis = catalog_subalgebra("H2", F3).key
    a, b, prod = subspace_closed(F3, basis, ProductKind.ASSOCIATIVE)
    assert Mat2(F3, basis[a]) == Mat2.unit(F3, "e11")
    assert Mat2(F3, basis[b]) == Mat2.unit(F3, "e12") + Mat2.unit(F3, "e21")
    assert Mat2(F3, prod) == Mat2.unit(F3, "e12")


def test_representatives_pairwise_inequivalent(F3):
    spec = GroupSpec(F3, include_transpose=True)
    keys = [subspace_canonical(catalog_subalgebra(n, F3).basis, spec) for n in SUBALGEBRA_NAMES]
    assert len(set(keys)) == 8


def test_orbits_cover_census(F3):
    subs = enumerate_subalgebras(F3, ProductKind.JORDAN)
    orbits = subalgebra_orbits(subs, GroupSpec(F3, include_transpose=True))
    assert sum(len(v) for v in orbits.values()) == len(subs)


def test_subalgebra_validation(F3):
    e = {n: Mat2.unit(F3, n) for n in ("e11", "e12", "e21", "e22")}
    with pytest.raises(ValueError):
        Subalgebra((e["e12"], e["e21"]), ProductKind.JORDAN)
    with pytest.raises(ValueError):
        Subalgebra((e["e11"], e["e11"]), ProductKind.JORDAN)
    with pytest.raises(ValueError):
        Subalgebra((), ProductKind.JORDAN)
