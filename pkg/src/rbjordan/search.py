"""Exhaustive enumeration of operators satisfying an identity over a small field.

The images of e11, e12, e21, e22 are assigned in that order.  Once the
images of e_i and e_j are both fixed, the identity at the pair (e_i, e_j)
reads

    sum_m M_m R(e_m) = L

with M and L known: a *linear* condition on the images still unassigned.
Every node keeps all such conditions, eliminates the later unknowns and
reads off what is left for the next image: either a contradiction (prune),
a unique forced value, or no restriction.  At a leaf the conditions cover
all 16 pairs, so leaves are exactly the solutions.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Optional, Sequence

from .field import FieldSpec
from .identities import IdentityKind, Problem, check_identity
from .linalg import in_span, span_basis
from .matrix import Mat2, structure_constants
from .operator import Op4

log = logging.getLogger(__name__)

DEFAULT_NODE_BUDGET = 10**9


class SearchBudgetError(RuntimeError):
    """The search would exceed (or has exceeded) the node budget."""


@dataclass(frozen=True)
class SearchOptions:
    prune: bool = True
    image_constraint: Optional[tuple[Mat2, ...]] = None
    naive_oracle: bool = False
    node_budget: int = DEFAULT_NODE_BUDGET
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.naive_oracle and self.prune:
            object.__setattr__(self, "prune", False)


@dataclass
class OperatorSet:
    problem: Problem
    field: FieldSpec
    ops: list[Op4]
    metadata: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.ops)

    def vecs(self) -> set[tuple[int, ...]]:
        return {R.vec for R in self.ops}

    def header(self) -> dict:
        return {
            "problem": self.problem.to_json(),
            "field": self.field.to_json(),
            "count": len(self.ops),
            "metadata": self.metadata,
        }


class _Engine:
    def __init__(self, prob: Problem, F: FieldSpec, image_constraint=None):
        self.F = F
        self.add = F.add_table
        self.mul = F.mul_table
        self.neg = F.neg_table
        self.inv = F.inv_table
        C = structure_constants(prob.product, F)
        self.terms = [(a, b, k, C[a][b][k]) for a in range(4) for b in range(4) for k in range(4) if C[a][b][k]]
        # x * e_j and e_i * x as lists of (source coordinate, target coordinate, coefficient)
        self.right = [[(a, k, C[a][j][k]) for a in range(4) for k in range(4) if C[a][j][k]] for j in range(4)]
        self.left = [[(b, k, C[i][b][k]) for b in range(4) for k in range(4) if C[i][b][k]] for i in range(4)]
        self.sym = prob.identity is IdentityKind.SYMMETRIZED
        self.two = F.from_int(2)
        lam = prob.weight.code
        lam_part = []
        for i in range(4):
            row = []
            for j in range(4):
                v = [self.mul[lam][c] for c in C[i][j]]
                if self.sym:
                    v = [self.add[x][self.mul[lam][c]] for x, c in zip(v, C[j][i])]
                row.append(v)
            lam_part.append(row)
        self.lam_part = lam_part
        if image_constraint is None:
            self.candidates = [tuple(c) for c in cartesian(range(F.q), repeat=4)]
            self.span = None
        else:
            basis = span_basis(F, [m.entries for m in image_constraint])
            self.span = basis
            cands = set()
            for coeffs in cartesian(range(F.q), repeat=len(basis)):
                v = [0, 0, 0, 0]
                for c, b in zip(coeffs, basis):
                    for k in range(4):
                        v[k] = self.add[v[k]][self.mul[c][b[k]]]
                cands.add(tuple(v))
            self.candidates = sorted(cands)
        self.nodes = 0
        self.prunes = 0
        self.forced = 0
        self.budget = DEFAULT_NODE_BUDGET

    def _prod(self, x, y):
        add, mul = self.add, self.mul
        out = [0, 0, 0, 0]
        for a, b, k, c in self.terms:
            if x[a] and y[b]:
                out[k] = add[out[k]][mul[mul[x[a]][y[b]]][c]]
        return out

    def _lin(self, table, x, out):
        add, mul = self.add, self.mul
        for a, k, c in table:
            if x[a]:
                out[k] = add[out[k]][mul[x[a]][c]]

    def row(self, X, i, j):
        """(M, L) for the pair (e_i, e_j)."""
        xi, xj = X[i], X[j]
        L = self._prod(xi, xj)
        M = list(self.lam_part[i][j])
        self._lin(self.right[j], xi, M)
        self._lin(self.left[i], xj, M)
        if self.sym:
            L = [self.mul[self.two][c] for c in L]
            self._lin(self.left[j], xi, M)
            self._lin(self.right[i], xj, M)
        return M, L

    def _reduce(self, X, rows):
        """Rows with the assigned images moved to the right-hand side."""
        add, mul, neg = self.add, self.mul, self.neg
        d = len(X)
        out = []
        for M, L in rows:
            T = list(L)
            for m in range(d):
                c = M[m]
                if c:
                    nc = neg[c]
                    xm = X[m]
                    for k in range(4):
                        if xm[k]:
                            T[k] = add[T[k]][mul[nc][xm[k]]]
            out.append((list(M[d:]), T))
        return out

    def _next_options(self, X, rows):
        """None if infeasible, a one-element list if forced, else all candidates."""
        add, mul, neg, inv = self.add, self.mul, self.neg, self.inv
        d = len(X)
        red = self._reduce(X, rows)
        if d == 4:
            return [] if all(not any(T) for _, T in red) else None
        # eliminate the unknowns after position d (local index 0 is the next image)
        for v in range(3 - d, 0, -1):
            piv = next((r for r in red if r[0][v]), None)
            if piv is None:
                continue
            red.remove(piv)
            pc, pT = piv
            pinv = inv[pc[v]]
            for r in red:
                c, T = r
                f = c[v]
                if f:
                    f = neg[mul[f][pinv]]
                    for u in range(len(c)):
                        if pc[u]:
                            c[u] = add[c[u]][mul[f][pc[u]]]
                    for k in range(4):
                        if pT[k]:
                            T[k] = add[T[k]][mul[f][pT[k]]]
        forced = None
        for c, T in red:
            if not c[0]:
                if any(T):
                    return None
                continue
            ci = inv[c[0]]
            val = tuple(mul[ci][t] for t in T)
            if forced is None:
                forced = val
            elif forced != val:
                return None
        if forced is not None:
            if self.span is not None and not in_span(self.F, self.span, forced):
                return None
            self.forced += 1
            return [forced]
        return self.candidates

    def _visit(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetError(f"node budget {self.budget} exceeded")

    def dfs(self, X, rows, out):
        self._visit()
        opts = self._next_options(X, rows)
        if opts is None:
            self.prunes += 1
            return
        d = len(X)
        if d == 4:
            out.append(tuple(c for x in X for c in x))
            return
        for x in opts:
            X2 = X + [x]
            new = [self.row(X2, d, m) for m in range(d + 1)]
            new += [self.row(X2, m, d) for m in range(d)]
            self.dfs(X2, rows + new, out)

    def run(self, first_images: Sequence[tuple[int, ...]]):
        out: list[tuple[int, ...]] = []
        for x0 in first_images:
            X = [x0]
            self.dfs(X, [self.row(X, 0, 0)], out)
        return out


def _pruned_worker(args):
    prob, F, constraint, first, budget = args
    eng = _Engine(prob, F, constraint)
    eng.budget = budget
    sols = eng.run(first)
    return sols, eng.nodes, eng.prunes, eng.forced


def _split(seq: Sequence, n: int) -> list[list]:
    n = max(1, min(n, len(seq)))
    return [list(seq[i::n]) for i in range(n)]


def _pruned_search(prob: Problem, F: FieldSpec, opts: SearchOptions) -> OperatorSet:
    eng = _Engine(prob, F, opts.image_constraint)
    tasks = [(prob, F, opts.image_constraint, chunk, opts.node_budget) for chunk in _split(eng.candidates, opts.jobs)]
    if opts.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=opts.jobs) as pool:
            results = list(pool.map(_pruned_worker, tasks))
    else:
        results = [_pruned_worker(t) for t in tasks]
    vecs = sorted({v for sols, *_ in results for v in sols})
    nodes = sum(r[1] for r in results)
    if nodes > opts.node_budget:
        raise SearchBudgetError(f"node budget {opts.node_budget} exceeded ({nodes} nodes)")
    meta = {
        "method": "pruned",
        "nodes": nodes,
        "prune_hits": sum(r[2] for r in results),
        "forced": sum(r[3] for r in results),
    }
    return OperatorSet(prob, F, [Op4(F, v) for v in vecs], meta)


def enumerate_operators(prob: Problem, field: FieldSpec, opts: Optional[SearchOptions] = None) -> OperatorSet:
    """All operators over ``field`` satisfying ``prob``, sorted lexicographically."""
    opts = opts or SearchOptions()
    if prob.field != field:
        raise ValueError("problem weight lies in a different field")
    if opts.naive_oracle or not opts.prune:
        from .oracle import naive_enumerate

        vecs, meta = naive_enumerate(prob, field, node_budget=opts.node_budget, jobs=opts.jobs)
        ops = [Op4(field, v) for v in vecs]
        if opts.image_constraint is not None:
            span = span_basis(field, [m.entries for m in opts.image_constraint])
            ops = [R for R in ops if all(in_span(field, span, m.entries) for m in R.images)]
        return OperatorSet(prob, field, ops, meta)
    result = _pruned_search(prob, field, opts)
    log.info("enumerated %d operators for %s over %s (%s)", len(result), prob, field, result.metadata)
    return result


def verify_set(opset: OperatorSet) -> list[Op4]:
    """Members that fail their own problem (should be empty)."""
    return [R for R in opset.ops if not check_identity(R, opset.problem).passed]
