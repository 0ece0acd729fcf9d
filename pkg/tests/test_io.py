from __future__ import annotations

import json

import pytest

from rbjordan.catalog import catalog_operator
from rbjordan.io import (
    LiteralError,
    dumps,
    load_operator,
    op_from_literal,
    op_to_literal,
    parse_catalog_uri,
    read_rbset,
    write_rbset,
)
from rbjordan.operator import Op4


def test_literal_roundtrip(F3, F9):
    for F in (F3, F9):
        for name in ("A3", "B5", "S2", "R1"):
            R = catalog_operator(name, F)
            assert op_from_literal(json.loads(dumps(op_to_literal(R)))) == R


def test_literal_shape(F3):
    lit = op_to_literal(catalog_operator("A1", F3))
    assert lit["field"] == {"p": 3, "deg": 1}
    assert lit["images"]["e21"] == [0, 1, 0, 0]


@pytest.mark.parametrize(
    "obj",
    [
        {"images": {}},
        {"field": {"p": 3}, "images": {"e11": [0, 0, 0, 0]}},
        {"field": {"p": 3}, "images": {n: [0, 0, 0] for n in ("e11", "e12", "e21", "e22")}},
        {"field": {"p": 3}, "images": {n: [0, 0, 0, 3] for n in ("e11", "e12", "e21", "e22")}},
        {"field": {"p": 3}, "images": {n: [0, 0, 0, True] for n in ("e11", "e12", "e21", "e22")}},
        {"field": {"p": 3, "deg": 2}, "images": {n: [0, 0, 0, 1] for n in ("e11", "e12", "e21", "e22")}},
        {"field": {"p": 4}, "images": {n: [0, 0, 0, 0] for n in ("e11", "e12", "e21", "e22")}},
        {"field": [3], "images": {n: [0, 0, 0, 0] for n in ("e11", "e12", "e21", "e22")}},
        {"field": {"p": "x"}, "images": {n: [0, 0, 0, 0] for n in ("e11", "e12", "e21", "e22")}},
        [1, 2, 3],
    ],
)
def test_bad_literals(obj):
    with pytest.raises(LiteralError):
        op_from_literal(obj)


def test_catalog_uri(F5):
    assert parse_catalog_uri("catalog:R2?field=5") == catalog_operator("R2", F5)
    R = parse_catalog_uri("catalog:fam4?field=5&alpha=0&beta=1")
    assert R == catalog_operator("A1", F5)
    assert parse_catalog_uri("catalog:A1?field=3&deg=2").field.q == 9
    for bad in ("catalog:zz", "catalog:A1?field=4", "catalog:A1?field=x", "catalog:fam3?field=3"):
        with pytest.raises(LiteralError):
            parse_catalog_uri(bad)


def test_load_operator_sources(tmp_path, F3):
    R = catalog_operator("B4", F3)
    text = dumps(op_to_literal(R))
    path = tmp_path / "op.json"
    path.write_text(text)
    assert load_operator(str(path)) == R
    assert load_operator(text) == R
    with pytest.raises(LiteralError):
        load_operator(str(tmp_path / "missing.json"))
    with pytest.raises(LiteralError):
        load_operator("{not json")


def test_rbset_roundtrip(tmp_path, F3, sets3):
    s = sets3.get("jordan", "rb", 1)
    path = tmp_path / "w1.rbset"
    write_rbset(path, s.header(), s.ops)
    header, ops = read_rbset(path)
    assert header["kind"] == "rbset" and header["count"] == len(ops)
    assert ops == s.ops
    first = path.read_text().splitlines()[0]
    assert json.loads(first)["problem"]["product"] == "jordan"


@pytest.mark.parametrize(
    "content",
    ["", "not json\n", '{"kind": "other"}\n', '{"kind": "rbset"}\n', '{"kind": "rbset", "field": {"p": 3}}\n[1]\n'],
)
def test_bad_rbset(tmp_path, content):
    path = tmp_path / "bad.rbset"
    path.write_text(content)
    with pytest.raises(LiteralError):
        read_rbset(path)


def test_rbset_field_mismatch(tmp_path, F3, F5):
    path = tmp_path / "mix.rbset"
    lines = [dumps({"kind": "rbset", "field": {"p": 3, "deg": 1}}), dumps(op_to_literal(Op4.zero(F5)))]
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(LiteralError):
        read_rbset(path)
