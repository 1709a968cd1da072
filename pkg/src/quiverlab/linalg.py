"""Exact linear algebra over prime fields, the rationals, and the integers.

Matrices are plain lists of rows.  ``p`` selects the field: a prime for
GF(p), ``0`` for exact rational arithmetic with :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def _norm(x, p):
    if p:
        return int(x) % p
    return Fraction(x)


def _inv(x, p):
    if p:
        return pow(int(x), -1, p)
    return 1 / x


def rref(rows, p, ncols=None):
    """Reduced row echelon form.  Returns ``(rows, pivot_columns)``."""
    m = [[_norm(x, p) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = _inv(m[r][c], p)
        row = [x * inv for x in m[r]]
        if p:
            row = [x % p for x in row]
        m[r] = row
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                if p:
                    m[i] = [(a - f * b) % p for a, b in zip(m[i], row)]
                else:
                    m[i] = [a - f * b for a, b in zip(m[i], row)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, p):
    if not rows or not rows[0]:
        return 0
    if p:
        return rank_mod_p(np.array(rows, dtype=np.int64), p)
    return len(rref(rows, p)[1])


def nullspace(rows, p, ncols):
    """Basis of ``{x : A x = 0}`` for an ``len(rows) x ncols`` matrix."""
    if ncols == 0:
        return []
    if not rows:
        one = _norm(1, p)
        zero = _norm(0, p)
        return [[one if i == j else zero for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(rows, p, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [_norm(0, p)] * ncols
        v[f] = _norm(1, p)
        for i, c in enumerate(pivots):
            v[c] = _norm(-red[i][f], p)
        basis.append(v)
    return basis


def left_nullspace(mat, p, nrows):
    """Rows ``w`` with ``w A = 0`` for an ``nrows x k`` matrix ``A``."""
    if nrows == 0:
        return []
    if not mat or not mat[0]:
        return nullspace([], p, nrows)
    return nullspace(transpose(mat), p, nrows)


def transpose(mat):
    return [list(col) for col in zip(*mat)]


def matmul(a, b, p=None):
    if not a or not b:
        return [[0] * (len(b[0]) if b else 0) for _ in a]
    bt = list(zip(*b))
    out = [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]
    if p:
        out = [[x % p for x in row] for row in out]
    return out


def zeros(r, c):
    return [[0] * c for _ in range(r)]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def rank_mod_p(a: np.ndarray, p: int) -> int:
    """Rank of an integer numpy matrix over GF(p)."""
    a = np.array(a, dtype=np.int64) % p
    nr, nc = a.shape
    if nr == 0 or nc == 0:
        return 0
    r = 0
    for c in range(nc):
        if r == nr:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            a[nzr] = (a[nzr] - np.outer(col[nzr], a[r])) % p
        r += 1
    return r


def nullspace_mod_p(a: np.ndarray, p: int) -> np.ndarray:
    """Nullspace basis over GF(p) as rows of an int64 array."""
    a = np.array(a, dtype=np.int64) % p
    nr, nc = a.shape
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            a[nzr] = (a[nzr] - np.outer(col[nzr], a[r])) % p
        pivots.append(c)
        r += 1
    pset = set(pivots)
    free = [c for c in range(nc) if c not in pset]
    basis = np.zeros((len(free), nc), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, c in enumerate(pivots):
            basis[k, c] = (-a[i, f]) % p
    return basis


# -- integers ---------------------------------------------------------------

def smith_normal_form(mat):
    """Invariant factors of an integer matrix.

    Returns the nonzero diagonal entries ``d_1 | d_2 | ... | d_r`` of the
    Smith normal form, computed with unimodular row and column operations on
    Python integers (no modular shortcuts).
    """
    a = [[int(x) for x in row] for row in mat]
    if not a or not a[0]:
        return []
    nr, nc = len(a), len(a[0])
    diag = []
    t = 0
    while t < min(nr, nc):
        # pick the smallest nonzero entry in the remaining block as pivot
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            piv = a[t][t]
            done = True
            for i in range(t + 1, nr):
                q = a[i][t] // piv
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, nc):
                q = a[t][j] // piv
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if done:
                # divisibility of the rest of the block
                bad = None
                for i in range(t + 1, nr):
                    for j in range(t + 1, nc):
                        if a[i][j] % piv:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad])]
                continue
            # move the smallest remainder into the pivot position
            best = (t, t)
            for i in range(t, nr):
                if a[i][t] and abs(a[i][t]) < abs(a[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t, nc):
                if a[t][j] and abs(a[t][j]) < abs(a[best[0]][best[1]]):
                    best = (t, j)
            i, j = best
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag
