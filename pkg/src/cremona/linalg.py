"""Exact Gaussian elimination over a cyclotomic field."""
from __future__ import annotations

from .cyclo import invert


def row_echelon(rows):
    """Return (reduced rows, pivot columns) of a matrix given as lists of CycNum."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if not m[i][c].is_zero()), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = invert(m[r][c])
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    return len(row_echelon(rows)[1])


def nullspace(rows, ncols=None):
    m, pivots = row_echelon(rows)
    ncols = ncols if ncols is not None else len(rows[0])
    fld = rows[0][0].field
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [fld.zero] * ncols
        v[f] = fld.one
        for r, c in enumerate(pivots):
            v[c] = -m[r][f]
        basis.append(v)
    return basis


def det(rows):
    m = [list(r) for r in rows]
    n = len(m)
    fld = m[0][0].field
    acc = fld.one
    for c in range(n):
        pivot = next((i for i in range(c, n) if not m[i][c].is_zero()), None)
        if pivot is None:
            return fld.zero
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            acc = -acc
        acc = acc * m[c][c]
        inv = invert(m[c][c])
        for i in range(c + 1, n):
            if not m[i][c].is_zero():
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return acc


def matmul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), a[0][0].field.zero)
             for j in range(len(b[0]))] for i in range(len(a))]


def matvec(a, v):
    return [sum((a[i][k] * v[k] for k in range(len(v))), v[0].field.zero) for i in range(len(a))]
