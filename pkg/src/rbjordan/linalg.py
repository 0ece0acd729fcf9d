"""Gaussian elimination over a FieldSpec (vectors are tuples of codes)."""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .field import FieldSpec

Vector = tuple[int, ...]


def rref(F: FieldSpec, rows: Iterable[Sequence[int]]) -> tuple[list[Vector], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = F.inv(mat[r][c])
        mat[r] = [F.mul(inv, x) for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return [tuple(row) for row in mat[:r]], pivots


def rank(F: FieldSpec, rows: Iterable[Sequence[int]]) -> int:
    return len(rref(F, rows)[0])


def span_basis(F: FieldSpec, vectors: Iterable[Sequence[int]]) -> tuple[Vector, ...]:
    """Canonical (reduced echelon) basis of the span."""
    return tuple(rref(F, vectors)[0])


def nullspace(F: FieldSpec, rows: Sequence[Sequence[int]], ncols: int) -> list[Vector]:
    """Basis of {x : rows . x = 0}, returned in reduced echelon form."""
    red, pivots = rref(F, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = F.one
        for row, pc in zip(red, pivots):
            v[pc] = F.neg(row[f])
        basis.append(tuple(v))
    return list(span_basis(F, basis))


def in_span(F: FieldSpec, basis: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    if not any(v):
        return True
    return rank(F, list(basis) + [v]) == rank(F, basis)


def solve_coordinates(F: FieldSpec, basis: Sequence[Sequence[int]], v: Sequence[int]) -> Optional[Vector]:
    """Coefficients c with sum c_i basis_i = v, or None if v is outside the span."""
    n = len(basis)
    if n == 0:
        return () if not any(v) else None
    dim = len(v)
    # augmented system: columns are basis vectors
    rows = [[basis[i][k] for i in range(n)] + [v[k]] for k in range(dim)]
    red, pivots = rref(F, rows)
    if n in pivots:
        return None
    sol = [0] * n
    for row, pc in zip(red, pivots):
        sol[pc] = row[n]
    return tuple(sol)
