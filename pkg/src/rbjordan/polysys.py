"""Polynomial systems in the 16 operator coefficients.

Variable ``a11`` is the e11-coordinate of R(e11), ``a12`` its e12-coordinate,
and so on with letters a, b, c, d for the images of e11, e12, e21, e22.
Coefficients are integers; reduction mod p happens only at evaluation.
The Jordan product's 1/2 is cleared by multiplying every generated
polynomial by 2.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from .field import FieldSpec
from .identities import IdentityKind
from .matrix import ProductKind

_LETTERS = "abcd"
_COORDS = ("11", "12", "21", "22")
VAR_NAMES: tuple[str, ...] = tuple(f"{l}{c}" for l in _LETTERS for c in _COORDS) + ("lam",)
NVARS = len(VAR_NAMES)
LAM = VAR_NAMES.index("lam")
# the coordinates forced to zero when the image lies in span(e11, e12)
BLOCK_ZEROED = ("a21", "a22", "b21", "b22", "c21", "c22", "d21", "d22")
BLOCK_FREE = ("a11", "a12", "b11", "b12", "c11", "c12", "d11", "d12")

Exponents = tuple[int, ...]


class PolySysError(ValueError):
    pass


def var_index(name: str) -> int:
    try:
        return VAR_NAMES.index(name)
    except ValueError:
        raise PolySysError(f"unknown variable {name!r}") from None


@dataclass(frozen=True)
class MultiPoly:
    terms: Mapping[Exponents, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {e: c for e, c in self.terms.items() if c}
        object.__setattr__(self, "terms", clean)

    @classmethod
    def const(cls, c: int) -> MultiPoly:
        return cls({(0,) * NVARS: c})

    @classmethod
    def var(cls, name: str | int) -> MultiPoly:
        i = var_index(name) if isinstance(name, str) else name
        e = [0] * NVARS
        e[i] = 1
        return cls({tuple(e): 1})

    def __add__(self, other) -> MultiPoly:
        other = _lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> MultiPoly:
        return self + (-_lift(other))

    def __rsub__(self, other) -> MultiPoly:
        return _lift(other) - self

    def __mul__(self, other) -> MultiPoly:
        other = _lift(other)
        out: dict[Exponents, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> MultiPoly:
        acc = MultiPoly.const(1)
        for _ in range(n):
            acc = acc * self
        return acc

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiPoly) and dict(self.terms) == dict(other.terms)

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, x in enumerate(e) if x}

    def sorted_terms(self) -> list[tuple[Exponents, int]]:
        """Degree descending, then exponent vectors descending."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def normalized(self) -> MultiPoly:
        """Sign fixed so the leading coefficient is positive."""
        st = self.sorted_terms()
        return -self if st and st[0][1] < 0 else self

    def substitute(self, values: Mapping[int, MultiPoly]) -> MultiPoly:
        out = MultiPoly()
        for e, c in self.terms.items():
            term = MultiPoly.const(c)
            rest = list(e)
            for i, x in enumerate(e):
                if x and i in values:
                    term = term * values[i] ** x
                    rest[i] = 0
            term = term * MultiPoly({tuple(rest): 1})
            out = out + term
        return out

    def evaluate(self, point: Mapping[int, int] | Sequence[int], p: int) -> int:
        if not isinstance(point, Mapping):
            point = dict(enumerate(point))
        total = 0
        for e, c in self.terms.items():
            t = c
            for i, x in enumerate(e):
                if x:
                    t = t * pow(point[i], x, p) % p
            total += t
        return total % p

    def evaluate_many(self, cols: Mapping[int, np.ndarray], p: int, n: int) -> np.ndarray:
        """Vectorized evaluation; ``cols[i]`` holds the values of variable i."""
        acc = np.zeros(n, dtype=np.int64)
        for e, c in self.terms.items():
            t = np.full(n, c % p, dtype=np.int64)
            for i, x in enumerate(e):
                for _ in range(x):
                    t = t * cols[i] % p
            acc = (acc + t) % p
        return acc

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, (e, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                VAR_NAMES[i] if x == 1 else f"{VAR_NAMES[i]}^{x}" for i, x in enumerate(e) if x
            )
            mag = abs(c)
            body = mono if mag == 1 and mono else (f"{mag}*{mono}" if mono else str(mag))
            sign = "-" if c < 0 else "+"
            parts.append(("-" if c < 0 else "") + body if k == 0 else f" {sign} {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({self.render()})"

    def to_json(self) -> list:
        return [{"exponents": list(e[:16]) + ([e[16]] if e[16] else []), "coeff": c} for e, c in self.sorted_terms()]


def _lift(x) -> MultiPoly:
    return x if isinstance(x, MultiPoly) else MultiPoly.const(int(x))


def parse_poly(text: str) -> MultiPoly:
    """Parse ``+ - * ^`` and parentheses over integers and the variable names."""
    import ast

    tree = ast.parse(text.replace("^", "**"), mode="eval")

    def walk(node) -> MultiPoly:
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.BinOp):
            a, b = walk(node.left), node.right
            if isinstance(node.op, ast.Add):
                return a + walk(b)
            if isinstance(node.op, ast.Sub):
                return a - walk(b)
            if isinstance(node.op, ast.Mult):
                return a * walk(b)
            if isinstance(node.op, ast.Pow) and isinstance(b, ast.Constant) and isinstance(b.value, int):
                return a**b.value
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -walk(node.operand)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return MultiPoly.const(node.value)
        if isinstance(node, ast.Name):
            return MultiPoly.var(node.id)
        raise PolySysError(f"cannot parse {ast.dump(node)}")

    return walk(tree)


# -- generation ------------------------------------------------------------


def _int_structure(kind: ProductKind) -> tuple[list[list[list[int]]], int]:
    """Integer structure constants and the scale they carry (2 for Jordan)."""

    def assoc(i: int, j: int) -> list[int]:
        a, b = divmod(i, 2)
        c, d = divmod(j, 2)
        out = [0, 0, 0, 0]
        if b == c:
            out[2 * a + d] = 1
        return out

    if kind is ProductKind.ASSOCIATIVE:
        return [[assoc(i, j) for j in range(4)] for i in range(4)], 1
    if kind is ProductKind.JORDAN:
        return [[[x + y for x, y in zip(assoc(i, j), assoc(j, i))] for j in range(4)] for i in range(4)], 2
    return [[[x - y for x, y in zip(assoc(i, j), assoc(j, i))] for j in range(4)] for i in range(4)], 1


Ansatz = Mapping[str, Union[int, MultiPoly, str]]

BLOCK_ANSATZ: dict[str, int] = {name: 0 for name in BLOCK_ZEROED}


def _resolve_ansatz(ansatz: Optional[Union[Ansatz, Iterable[tuple[str, object]]]]) -> dict[int, MultiPoly]:
    if ansatz is None:
        return {}
    pairs = list(ansatz.items()) if isinstance(ansatz, Mapping) else list(ansatz)
    out: dict[int, MultiPoly] = {}
    for name, value in pairs:
        i = var_index(name)
        if i in out:
            raise PolySysError(f"inconsistent ansatz: {name} bound twice")
        out[i] = parse_poly(value) if isinstance(value, str) else _lift(value)
    for i, val in out.items():
        if val.variables() & set(out):
            raise PolySysError(f"inconsistent ansatz: {VAR_NAMES[i]} refers to another bound variable")
    return out


def generate_system(
    product: ProductKind | str,
    identity: IdentityKind | str,
    weight: Union[int, str],
    ansatz: Optional[Ansatz] = None,
) -> list[MultiPoly]:
    """LHS - RHS coordinates over all 16 basis pairs; ``weight='lam'`` keeps it symbolic."""
    kind = ProductKind(product)
    ident = IdentityKind(identity)
    C, _ = _int_structure(kind)
    lam = MultiPoly.var(LAM) if weight == "lam" else MultiPoly.const(int(weight))
    X = [[MultiPoly.var(4 * m + k) for k in range(4)] for m in range(4)]
    units = [[1 if k == m else 0 for k in range(4)] for m in range(4)]

    def prod(x: Sequence, y: Sequence) -> list[MultiPoly]:
        out = [MultiPoly() for _ in range(4)]
        for a in range(4):
            for b in range(4):
                if isinstance(x[a], int) and not x[a] or isinstance(y[b], int) and not y[b]:
                    continue
                for k in range(4):
                    if C[a][b][k]:
                        out[k] = out[k] + C[a][b][k] * _lift(x[a]) * _lift(y[b])
        return out

    def vsum(*vs):
        return [sum((v[k] for v in vs), MultiPoly()) for k in range(4)]

    subs = _resolve_ansatz(ansatz)
    seen: set[MultiPoly] = set()
    polys: list[MultiPoly] = []
    for i in range(4):
        for j in range(4):
            ei, ej = units[i], units[j]
            if ident is IdentityKind.RB:
                L = prod(X[i], X[j])
                lam_term = [lam * c for c in prod(ei, ej)]
                M = vsum(prod(X[i], ej), prod(ei, X[j]), lam_term)
            else:
                L = [2 * c for c in prod(X[i], X[j])]
                lam_term = [lam * c for c in vsum(prod(ei, ej), prod(ej, ei))]
                M = vsum(prod(X[i], ej), prod(ei, X[j]), prod(ej, X[i]), prod(X[j], ei), lam_term)
            for k in range(4):
                rhs = sum((M[m] * X[m][k] for m in range(4)), MultiPoly())
                f = L[k] - rhs
                if subs:
                    f = f.substitute(subs)
                f = f.normalized()
                if f and f not in seen:
                    seen.add(f)
                    polys.append(f)
    return polys


def reference_block_system(include_linear: bool = True) -> list[MultiPoly]:
    """The quadratic system for images in span(e11, e12), plus a11 = -b12 = -d11."""
    quad = [
        "d11^2 + b11*a12",
        "b11*c12 - c11*d11",
        "d11*c12 + a12*(d12 + c11 + a12)",
        "a11*(d12 + a12)",
        "b11*(d12 + a12)",
        "c12*(d12 + a12)",
        "(d12 + a12)*(d12 - a12 - c11)",
    ]
    linear = ["a11 + b12", "a11 + d11"]
    return [parse_poly(t) for t in (linear if include_linear else []) + quad]


# -- solution sets -----------------------------------------------------------

DEFAULT_EVAL_BUDGET = 10**7


def _locus(sys: Sequence[MultiPoly], cols: Mapping[int, np.ndarray], p: int, n: int) -> np.ndarray:
    mask = np.ones(n, dtype=bool)
    for f in sys:
        mask &= f.evaluate_many(cols, p, n) == 0
    return mask


def _grid(F: FieldSpec, variables: Sequence[str], budget: int):
    if F.deg != 1:
        raise PolySysError("exhaustive evaluation supports prime fields only")
    idx = [var_index(v) for v in variables]
    n = F.p ** len(idx)
    if n > budget:
        raise PolySysError(f"{n} evaluation points exceed the budget {budget}")
    grid = np.array(np.unravel_index(np.arange(n), (F.p,) * len(idx)), dtype=np.int64)
    return idx, {i: grid[r] for r, i in enumerate(idx)}, n


def _check_vars(sys: Sequence[MultiPoly], idx: Sequence[int]) -> None:
    extra = set().union(*(f.variables() for f in sys)) - set(idx) if sys else set()
    if extra:
        raise PolySysError(f"system uses variables outside the list: {sorted(VAR_NAMES[i] for i in extra)}")


def solution_sets_equal(
    sys1: Sequence[MultiPoly],
    sys2: Sequence[MultiPoly],
    field: FieldSpec,
    variables: Sequence[str],
    budget: int = DEFAULT_EVAL_BUDGET,
) -> tuple[bool, Optional[dict[str, int]]]:
    """Compare vanishing loci over field^len(variables) by exhaustive evaluation."""
    idx, cols, n = _grid(field, variables, budget)
    _check_vars(sys1, idx)
    _check_vars(sys2, idx)
    diff = _locus(sys1, cols, field.p, n) != _locus(sys2, cols, field.p, n)
    if not diff.any():
        return True, None
    at = int(np.argmax(diff))
    return False, {VAR_NAMES[i]: int(cols[i][at]) for i in idx}


def locus_containment(
    sys1: Sequence[MultiPoly], sys2: Sequence[MultiPoly], field: FieldSpec, variables: Sequence[str], budget: int = DEFAULT_EVAL_BUDGET
) -> dict:
    idx, cols, n = _grid(field, variables, budget)
    _check_vars(sys1, idx)
    _check_vars(sys2, idx)
    l1 = _locus(sys1, cols, field.p, n)
    l2 = _locus(sys2, cols, field.p, n)
    return {
        "points": n,
        "solutions_1": int(l1.sum()),
        "solutions_2": int(l2.sum()),
        "first_in_second": bool(not (l1 & ~l2).any()),
        "second_in_first": bool(not (l2 & ~l1).any()),
    }


def count_solutions(sys: Sequence[MultiPoly], field: FieldSpec, variables: Sequence[str], budget: int = DEFAULT_EVAL_BUDGET) -> int:
    idx, cols, n = _grid(field, variables, budget)
    _check_vars(sys, idx)
    return int(_locus(sys, cols, field.p, n).sum())


def vanishes_at(sys: Sequence[MultiPoly], vec: Sequence[int], p: int, lam: int = 0) -> bool:
    point = list(vec) + [lam]
    return all(f.evaluate(point, p) == 0 for f in sys)


def vanishing_mask(sys: Sequence[MultiPoly], vecs: np.ndarray, p: int, lam: int = 0) -> np.ndarray:
    """For each row of ``vecs`` (N x 16), whether every polynomial vanishes."""
    n = vecs.shape[0]
    cols = {i: vecs[:, i].astype(np.int64) for i in range(16)}
    cols[LAM] = np.full(n, lam, dtype=np.int64)
    return _locus(sys, cols, p, n)


@dataclass
class SystemReport:
    polynomials: list[MultiPoly]
    variables: list[str]
    solution_counts: dict[str, int]

    def to_json(self) -> dict:
        return {
            "polynomials": [f.render() for f in self.polynomials],
            "variable_count": len(self.variables),
            "variables": self.variables,
            "solution_counts": self.solution_counts,
        }


def system_report(sys: Sequence[MultiPoly], variables: Sequence[str], fields: Sequence[FieldSpec]) -> SystemReport:
    return SystemReport(
        list(sys), list(variables), {str(F): count_solutions(sys, F, variables) for F in fields}
    )


# -- export ------------------------------------------------------------------


def active_variables(sys: Sequence[MultiPoly], ansatz: Optional[Ansatz] = None) -> list[str]:
    """The 16 coefficient names minus those fixed by the ansatz, plus lam if used."""
    bound = {var_index(k) for k in (ansatz or {})}
    names = [VAR_NAMES[i] for i in range(16) if i not in bound]
    if any(LAM in f.variables() for f in sys):
        names.append("lam")
    return names


def export_system(sys: Sequence[MultiPoly], fmt: str = "cas-script", variables: Optional[Sequence[str]] = None) -> str:
    if fmt == "structured":
        return json.dumps([f.to_json() for f in sys], sort_keys=True) + "\n"
    if fmt != "cas-script":
        raise PolySysError(f"unknown export format {fmt!r}")
    if variables is None:
        variables = active_variables(sys)
    ideal = ", ".join(f.render() for f in sys) if sys else "0"
    return f"ring r = 0, ({','.join(variables)}), dp;\nideal I = {ideal};\n"

