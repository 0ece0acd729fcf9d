"""Command-line driver.

Exit codes: 0 when every assertive claim passes, 1 when at least one fails,
2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from .field import FieldError, FieldSpec, make_field
from .identities import IdentityKind, Problem, check_identity
from .io import LiteralError, dumps, field_from_json, load_operator, op_to_literal, read_rbset, write_rbset
from .matrix import BASIS_NAMES, Mat2, ProductKind
from .polysys import BLOCK_ANSATZ, PolySysError, active_variables, export_system, generate_system
from .reports import (
    VerificationReport,
    classify,
    default_extra_fields,
    default_group,
    default_reps,
    dichotomy,
    paper_check,
    subalgebra_claims,
)
from .catalog import CatalogError, catalog_operator
from .search import DEFAULT_NODE_BUDGET, SearchBudgetError, SearchOptions, enumerate_operators
from .transforms import GroupSpec, partition_orbits

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("rbjordan")


class UsageError(Exception):
    pass


def parse_field(text: str) -> FieldSpec:
    parts = text.split(",")
    try:
        p = int(parts[0])
        deg = int(parts[1]) if len(parts) > 1 else 1
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad field {text!r}; expected p or p,deg") from None
    if len(parts) > 2:
        raise argparse.ArgumentTypeError(f"bad field {text!r}; expected p or p,deg")
    try:
        return make_field(p, deg)
    except FieldError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_common(p: argparse.ArgumentParser, problem: bool = False, field: bool = True) -> None:
    if field:
        p.add_argument("--field", type=parse_field, default=make_field(3), help="p or p,deg (default 3)")
    if problem:
        p.add_argument("--weight", type=int, default=0, help="integer weight, reduced into the field")
        p.add_argument("--product", choices=[k.value for k in ProductKind], default="jordan")
        p.add_argument("--identity", choices=[k.value for k in IdentityKind], default="rb")
    p.add_argument("--out", type=Path, help="write the result to this file")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker processes")
    p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--no-timing", action="store_true", help="omit wall times (byte-stable output)")


def _group_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--transpose", action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--scalars", action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--phi", action=argparse.BooleanOptionalAction, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rbjordan", description="Rota-Baxter and symmetrized Rota-Baxter operators on 2x2 matrices"
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check one operator against an identity")
    p.add_argument("operator", help="catalog:NAME[?field=..], a JSON file, or inline JSON")
    _add_common(p, problem=True)

    p = sub.add_parser("enumerate", help="all operators satisfying an identity")
    _add_common(p, problem=True)
    p.add_argument("--naive", action="store_true", help="use the brute-force scan")
    p.add_argument("--image-span", help="comma-separated basis units spanning the allowed image, e.g. e11,e12")

    p = sub.add_parser("orbits", help="partition an operator set into orbits")
    p.add_argument("--in", dest="infile", type=Path, required=True)
    _add_common(p, field=False)
    _group_flags(p)

    p = sub.add_parser("dichotomy", help="associative RB / symmetrized dichotomy for a Jordan set")
    p.add_argument("--in", dest="infile", type=Path, required=True)
    p.add_argument("--weight", type=int, default=None)
    _add_common(p, field=False)

    p = sub.add_parser("classify", help="match a Jordan set against the catalog representatives")
    p.add_argument("--in", dest="infile", type=Path, required=True)
    p.add_argument("--reps", help="comma-separated catalog names (default by weight)")
    _add_common(p, field=False)
    _group_flags(p)

    p = sub.add_parser("subalgebras", help="Jordan subalgebra census")
    _add_common(p)

    p = sub.add_parser("polysys", help="polynomial system of an identity")
    p.add_argument("--weight", default="0", help="integer, or 'lam' for a symbolic weight")
    p.add_argument("--product", choices=[k.value for k in ProductKind], default="jordan")
    p.add_argument("--identity", choices=[k.value for k in IdentityKind], default="rb")
    p.add_argument("--ansatz", choices=["none", "block"], default="none")
    p.add_argument("--format", choices=["cas-script", "structured"], default="cas-script")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("paper-check", help="run every claim end to end")
    _add_common(p)
    p.add_argument("--no-oracle", action="store_true", help="skip the brute-force cross-check")
    p.add_argument("--samples", type=int, default=100_000, help="random non-members for the soundness check")
    return parser


# -- helpers ---------------------------------------------------------------


def _emit(args, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_reports(args, reports: Sequence[VerificationReport], header: Optional[dict] = None) -> int:
    timing = not args.no_timing
    if args.json:
        doc = {"reports": [r.to_json(timing) for r in reports]}
        if header is not None:
            doc["header"] = header
        if timing:
            doc["generated_at"] = time.strftime("%Y-%m-%dT%H:%M:%S")
        _emit(args, json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        lines = [r.summary_line(timing) for r in reports]
        for r in reports:
            for v in r.violations:
                lines.append(f"    {r.claim}: {v['reason']}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_FAIL if any(r.failed for r in reports) else EXIT_OK


def _problem(args, F: FieldSpec) -> Problem:
    return Problem.make(args.product, args.identity, args.weight, F)


def _load_set(path: Path):
    header, ops = read_rbset(path)
    try:
        prob_json = header["problem"]
        F = field_from_json(header["field"])
        prob = Problem.make(prob_json["product"], prob_json["identity"], _header_weight(F, prob_json["weight"]), F)
    except (KeyError, TypeError, ValueError) as exc:
        raise LiteralError(f"{path}: malformed header: {exc}") from exc
    for R in ops:
        if not check_identity(R, prob).passed:
            raise LiteralError(f"{path}: member {R} fails the set's own identity {prob}")
    return header, prob, ops


def _header_weight(F: FieldSpec, w):
    if isinstance(w, list):
        return F.elem(F.from_coords(w))
    return F(int(w))


def _resolve_group(args, F: FieldSpec, lam: int) -> GroupSpec:
    base = default_group(F, lam)
    spec = GroupSpec(
        F,
        include_transpose=base.include_transpose if args.transpose is None else args.transpose,
        include_scalars=base.include_scalars if args.scalars is None else args.scalars,
        include_phi=base.include_phi if args.phi is None else args.phi,
    )
    if spec.include_scalars and F(lam).code:
        raise UsageError("scalar multiples do not preserve a nonzero weight")
    return spec


# -- commands --------------------------------------------------------------


def cmd_verify(args) -> int:
    ref = args.operator
    if ref.startswith("catalog:") and "field=" not in ref:
        F = args.field
        sep = "&" if "?" in ref else "?"
        ref = f"{ref}{sep}field={F.p}&deg={F.deg}"
    R = load_operator(ref)
    res = check_identity(R, _problem(args, R.field))
    doc = {"operator": ref, "problem": _problem(args, R.field).to_json(), "result": res.to_json()}
    if args.json:
        _emit(args, dumps(doc) + "\n")
    else:
        line = "PASS" if res.passed else f"FAIL witness {res.witness.args}: lhs {res.witness.lhs} != rhs {res.witness.rhs}"
        _emit(args, line + "\n")
    return EXIT_OK if res.passed else EXIT_FAIL


def _image_span(F: FieldSpec, text: Optional[str]):
    if not text:
        return None
    names = [t.strip() for t in text.split(",") if t.strip()]
    bad = [n for n in names if n not in BASIS_NAMES]
    if bad or not names:
        raise UsageError(f"--image-span expects basis units among {BASIS_NAMES}")
    return tuple(Mat2.unit(F, n) for n in names)


def cmd_enumerate(args) -> int:
    F = args.field
    prob = _problem(args, F)
    opts = SearchOptions(
        naive_oracle=args.naive,
        image_constraint=_image_span(F, args.image_span),
        node_budget=args.node_budget,
        jobs=args.jobs,
    )
    start = time.perf_counter()
    result = enumerate_operators(prob, F, opts)
    elapsed = time.perf_counter() - start
    meta = dict(result.metadata)
    if args.image_span:
        meta["image_span"] = args.image_span
    header = {"problem": prob.to_json(), "field": F.to_json(), "count": len(result), "metadata": meta}
    if args.out:
        write_rbset(args.out, header, result.ops)
    else:
        lines = [dumps({"kind": "rbset", **header})] + [dumps(op_to_literal(R)) for R in result.ops]
        sys.stdout.write("\n".join(lines) + "\n")
        return EXIT_OK
    summary = {"count": len(result), "out": str(args.out), **meta}
    if not args.no_timing:
        summary["wall_time"] = round(elapsed, 3)
    sys.stdout.write((dumps(summary) if args.json else f"{len(result)} operators written to {args.out}") + "\n")
    return EXIT_OK


def cmd_orbits(args) -> int:
    _, prob, ops = _load_set(args.infile)
    F = prob.field
    lam = prob.weight.code
    spec = _resolve_group(args, F, lam)
    orbits = partition_orbits(ops, spec, prob.weight)
    doc = {
        "problem": prob.to_json(),
        "group": spec.to_json(),
        "operators": len(ops),
        "orbits": [o.to_json() for o in orbits],
    }
    if args.json or args.out:
        _emit(args, json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        lines = [f"{len(orbits)} orbits over {len(ops)} operators"]
        for o in orbits:
            lines.append(f"  {o.members:5d}  {o.canonical}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _require_jordan_rb(prob: Problem, path: Path) -> None:
    if prob.product is not ProductKind.JORDAN or prob.identity is not IdentityKind.RB:
        raise UsageError(f"{path} holds {prob}, not a Jordan RB set")


def cmd_dichotomy(args) -> int:
    _, prob, ops = _load_set(args.infile)
    _require_jordan_rb(prob, args.infile)
    F = prob.field
    if args.weight is not None and F(args.weight) != prob.weight:
        raise UsageError(f"--weight {args.weight} does not match the set's weight {prob.weight.to_json()}")
    lam = prob.weight.code
    if lam not in (0, F.one):
        raise UsageError("the dichotomy covers weights 0 and 1")
    tag = "cor3a" if lam == 0 else "cor3b"
    start = time.perf_counter()
    rep = dichotomy(ops, lam, f"{tag}-dichotomy")
    rep.wall_time = time.perf_counter() - start
    return _emit_reports(args, [rep])


def cmd_classify(args) -> int:
    _, prob, ops = _load_set(args.infile)
    _require_jordan_rb(prob, args.infile)
    F = prob.field
    lam = prob.weight.code
    if lam not in (0, F.one):
        raise UsageError("classification covers weights 0 and 1")
    spec = _resolve_group(args, F, lam)
    reps, trivial = default_reps(F, lam)
    if args.reps:
        try:
            reps = {n: catalog_operator(n, F) for n in args.reps.split(",") if n}
        except CatalogError as exc:
            raise UsageError(str(exc)) from None
    start = time.perf_counter()
    out = classify(ops, reps, trivial, spec, lam, "thm3" if lam == 0 else "thm4")
    for r in out:
        r.wall_time = time.perf_counter() - start
    return _emit_reports(args, out)


def cmd_subalgebras(args) -> int:
    return _emit_reports(args, subalgebra_claims(args.field))


def cmd_polysys(args) -> int:
    weight = args.weight
    if weight != "lam":
        try:
            weight = int(weight)
        except ValueError:
            raise UsageError("--weight must be an integer or 'lam'") from None
    ansatz = BLOCK_ANSATZ if args.ansatz == "block" else None
    sys_ = generate_system(args.product, args.identity, weight, ansatz)
    text = export_system(sys_, args.format, active_variables(sys_, ansatz))
    _emit(args, text)
    return EXIT_OK


def cmd_paper_check(args) -> int:
    F = args.field
    header = {
        "field": F.to_json(),
        "extra_fields": [E.to_json() for E in default_extra_fields(F)],
        "oracle": not args.no_oracle,
        "samples": args.samples,
    }

    def progress(r: VerificationReport) -> None:
        log.info(r.summary_line(not args.no_timing))

    reports = paper_check(
        F,
        jobs=args.jobs,
        node_budget=args.node_budget,
        oracle=not args.no_oracle,
        samples=args.samples,
        extra_fields=default_extra_fields(F),
        log=progress,
    )
    return _emit_reports(args, reports, header)


COMMANDS = {
    "verify": cmd_verify,
    "enumerate": cmd_enumerate,
    "orbits": cmd_orbits,
    "dichotomy": cmd_dichotomy,
    "classify": cmd_classify,
    "subalgebras": cmd_subalgebras,
    "polysys": cmd_polysys,
    "paper-check": cmd_paper_check,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return COMMANDS[args.command](args)
    except (UsageError, LiteralError, FieldError, CatalogError, PolySysError, SearchBudgetError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
