"""Operator literals and .rbset (JSON-lines operator set) files."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Optional
from urllib.parse import parse_qs

from .field import FieldError, FieldSpec, make_field
from .matrix import BASIS_NAMES, Mat2
from .operator import Op4


class LiteralError(ValueError):
    """Malformed operator literal or operator-set file."""


def field_from_json(obj) -> FieldSpec:
    try:
        return make_field(int(obj["p"]), int(obj.get("deg", 1)))
    except (KeyError, TypeError, ValueError, AttributeError, FieldError) as exc:
        raise LiteralError(f"bad field description {obj!r}: {exc}") from exc


def op_to_literal(R: Op4) -> dict:
    return {
        "field": R.field.to_json(),
        "images": {name: m.to_json() for name, m in zip(BASIS_NAMES, R.images)},
    }


def _parse_coeff(F: FieldSpec, c) -> int:
    if F.deg == 1:
        if isinstance(c, bool) or not isinstance(c, int) or not 0 <= c < F.p:
            raise LiteralError(f"coefficient {c!r} is not an integer in [0, {F.p})")
        return c
    if not (isinstance(c, list) and len(c) == 2 and all(isinstance(x, int) and 0 <= x < F.p for x in c)):
        raise LiteralError(f"coefficient {c!r} is not a pair of residues mod {F.p}")
    return F.from_coords(c)


def op_from_literal(obj, field: Optional[FieldSpec] = None) -> Op4:
    if not isinstance(obj, dict) or "images" not in obj:
        raise LiteralError("operator literal needs an 'images' object")
    F = field_from_json(obj["field"]) if "field" in obj else field
    if F is None:
        raise LiteralError("operator literal lacks a field")
    images = obj["images"]
    if not isinstance(images, dict) or set(images) != set(BASIS_NAMES):
        raise LiteralError(f"images must list exactly {', '.join(BASIS_NAMES)}")
    mats = []
    for name in BASIS_NAMES:
        coeffs = images[name]
        if not isinstance(coeffs, list) or len(coeffs) != 4:
            raise LiteralError(f"image of {name} must have 4 coefficients")
        mats.append(Mat2(F, tuple(_parse_coeff(F, c) for c in coeffs)))  # type: ignore[arg-type]
    return Op4.from_images(mats)


def parse_catalog_uri(uri: str) -> Op4:
    """``catalog:R1?field=3`` or ``catalog:fam3?field=5&alpha=1&beta=2`` (``deg=2`` optional)."""
    from .catalog import CatalogError, CatalogKey, catalog_operator

    body = uri[len("catalog:") :]
    name, _, query = body.partition("?")
    params = {k: v[-1] for k, v in parse_qs(query).items()}
    try:
        F = make_field(int(params.get("field", 3)), int(params.get("deg", 1)))
        fam_params = None
        if "alpha" in params or "beta" in params:
            fam_params = (F(int(params.get("alpha", 0))), F(int(params.get("beta", 0))))
        return catalog_operator(CatalogKey(name, fam_params), F)
    except (ValueError, FieldError, CatalogError) as exc:
        raise LiteralError(f"bad catalog reference {uri!r}: {exc}") from exc


def load_operator(ref: str) -> Op4:
    """A catalog URI, a JSON file holding one literal, or inline JSON."""
    if ref.startswith("catalog:"):
        return parse_catalog_uri(ref)
    text = ref
    if not ref.lstrip().startswith("{"):
        try:
            text = Path(ref).read_text(encoding="utf-8")
        except OSError as exc:
            raise LiteralError(f"cannot read {ref}: {exc}") from exc
    try:
        return op_from_literal(json.loads(text))
    except json.JSONDecodeError as exc:
        raise LiteralError(f"invalid JSON in {ref}: {exc}") from exc


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def write_rbset(path: str | Path, header: dict, ops: Iterable[Op4]) -> None:
    lines = [dumps({"kind": "rbset", **header})]
    lines += [dumps(op_to_literal(R)) for R in ops]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_rbset(path: str | Path) -> tuple[dict, list[Op4]]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise LiteralError(f"cannot read {path}: {exc}") from exc
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise LiteralError(f"{path} is empty")
    try:
        header = json.loads(lines[0])
        if not isinstance(header, dict) or header.get("kind") != "rbset":
            raise LiteralError(f"{path} lacks an rbset header line")
        F = field_from_json(header["field"])
        ops = [op_from_literal(json.loads(ln), F) for ln in lines[1:]]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise LiteralError(f"{path}: {exc}") from exc
    if any(R.field != F for R in ops):
        raise LiteralError(f"{path}: operator field differs from the header")
    return header, ops
