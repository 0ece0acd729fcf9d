"""Brute-force scan of all q^16 operators, vectorized with numpy.

Independent of the backtracking engine: it evaluates both sides of the
identity directly with 2x2 integer matrices mod p on every candidate.
Prime fields only.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .field import FieldSpec
from .identities import IdentityKind, Problem
from .matrix import ProductKind

CHUNK_TARGET = 600_000


def _units() -> np.ndarray:
    u = np.zeros((4, 2, 2), dtype=np.int64)
    for m in range(4):
        u[m, m // 2, m % 2] = 1
    return u


def _product(kind: ProductKind, a: np.ndarray, b: np.ndarray, p: int, half: int) -> np.ndarray:
    ab = np.matmul(a, b)
    if kind is ProductKind.ASSOCIATIVE:
        return ab % p
    ba = np.matmul(b, a)
    if kind is ProductKind.JORDAN:
        return ((ab + ba) % p) * half % p
    return (ab - ba) % p


def _scan_block(prob: Problem, p: int, prefix: tuple[int, ...], tail: np.ndarray) -> list[tuple[int, ...]]:
    kind = prob.product
    lam = prob.weight.code
    half = pow(2, p - 2, p)
    n = tail.shape[0]
    vec = np.empty((n, 16), dtype=np.int64)
    vec[:, : len(prefix)] = prefix
    vec[:, len(prefix) :] = tail
    units = _units()
    sym = prob.identity is IdentityKind.SYMMETRIZED
    alive = np.arange(n)
    for i in range(4):
        for j in range(4):
            if alive.size == 0:
                return []
            v = vec[alive]
            images = v.reshape(-1, 4, 2, 2)
            xi, xj = images[:, i], images[:, j]
            ei, ej = units[i], units[j]
            lhs = _product(kind, xi, xj, p, half)
            arg = _product(kind, xi, ej, p, half) + _product(kind, ei, xj, p, half)
            arg = arg + lam * _product(kind, ei[None], ej[None], p, half)
            if sym:
                lhs = 2 * lhs % p
                arg = arg + _product(kind, ej, xi, p, half) + _product(kind, xj, ei, p, half)
                arg = arg + lam * _product(kind, ej[None], ei[None], p, half)
            arg = arg.reshape(-1, 4) % p
            rhs = np.einsum("nm,nmk->nk", arg, v.reshape(-1, 4, 4)) % p
            ok = np.all(lhs.reshape(-1, 4) == rhs, axis=1)
            alive = alive[ok]
    return [tuple(int(c) for c in row) for row in vec[alive]]


def _worker(args):
    prob, p, prefixes, tail_len = args
    digits = np.array(np.unravel_index(np.arange(p**tail_len), (p,) * tail_len), dtype=np.int64).T
    out = []
    for prefix in prefixes:
        out.extend(_scan_block(prob, p, prefix, digits))
    return out


def naive_enumerate(prob: Problem, F: FieldSpec, node_budget: int = 10**9, jobs: int = 1):
    """Every operator passing the identity, by exhaustive scan. Returns (sorted vecs, metadata)."""
    if F.deg != 1:
        raise ValueError("the naive oracle supports prime fields only")
    p = F.p
    total = p**16
    if total > node_budget:
        raise_budget(total, node_budget)
    tail_len = 16
    while p**tail_len > CHUNK_TARGET:
        tail_len -= 1
    head = 16 - tail_len
    prefixes = [tuple(int(x) for x in np.unravel_index(i, (p,) * head)) for i in range(p**head)] if head else [()]
    n = max(1, min(jobs, len(prefixes)))
    tasks = [(prob, p, prefixes[k::n], tail_len) for k in range(n)]
    if n > 1:
        with ProcessPoolExecutor(max_workers=n) as pool:
            parts = list(pool.map(_worker, tasks))
    else:
        parts = [_worker(t) for t in tasks]
    vecs = sorted({v for part in parts for v in part})
    return vecs, {"method": "naive", "candidates": total}


def raise_budget(total: int, budget: int):
    from .search import SearchBudgetError

    raise SearchBudgetError(f"naive scan of {total} operators exceeds the node budget {budget}")
