"""Morphisms between direct sums of catalog indecomposables.

Everything here works over a fixed prime field GF(p).  A module is named by a
*multiset*: a sorted tuple of catalog indices.  Kernels, images, cokernels and
extension middle terms are identified through their Hom-vectors against the
catalog (for a representation-finite algebra the vector ``dim Hom(Z, M)``
over all indecomposables ``Z`` determines ``M``), and every such dimension is
a rank of a matrix that depends affinely on the map.  That makes it possible
to treat all maps between two sums in one batched rank computation.
"""

from __future__ import annotations

import functools
import itertools
from fractions import Fraction

import numpy as np

from . import linalg
from .quiver import Quiver
from .reps import Representation, catalog, hom_table


class NotAnIntertwiner(ValueError):
    pass


class DecompositionError(RuntimeError):
    pass


# -- batched linear algebra ---------------------------------------------------

def batched_rank(stack: np.ndarray, p: int) -> np.ndarray:
    """Ranks over GF(p) of every matrix in a ``(m, r, c)`` stack."""
    a = np.array(stack, dtype=np.int64) % p
    m, nr, nc = a.shape
    rnk = np.zeros(m, dtype=np.int64)
    if m == 0 or nr == 0 or nc == 0:
        return rnk
    inv = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        inv[x] = pow(x, -1, p)
    rows = np.arange(nr)
    idx = np.arange(m)
    for j in range(nc):
        cand = (a[:, :, j] != 0) & (rows[None, :] >= rnk[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        sel = idx[has]
        piv = np.argmax(cand[sel], axis=1)
        tgt = rnk[sel]
        prow = a[sel, piv, :].copy()
        a[sel, piv, :] = a[sel, tgt, :]
        prow = (prow * inv[prow[:, j]][:, None]) % p
        a[sel, tgt, :] = prow
        col = a[sel, :, j].copy()
        col[np.arange(len(sel)), tgt] = 0
        a[sel] = (a[sel] - col[:, :, None] * prow[:, None, :]) % p
        rnk[sel] += 1
        if (rnk >= nr).all():
            break
    return rnk


def projective_points(h: int, p: int) -> np.ndarray:
    """Nonzero vectors of GF(p)^h with first nonzero entry 1, one per line."""
    out = []
    for lead in range(h):
        tail = h - lead - 1
        for rest in itertools.product(range(p), repeat=tail):
            v = [0] * lead + [1] + list(rest)
            out.append(v)
    return np.array(out, dtype=np.int64).reshape(len(out), h)


def _kron_right(b: np.ndarray, z: int) -> np.ndarray:
    """Matrix of x -> b x on row-major vec(x), x of shape (b.cols, z)."""
    return np.kron(b, np.eye(z, dtype=np.int64))


def _kron_left(b: np.ndarray, z: int) -> np.ndarray:
    """Matrix of h -> h b on row-major vec(h), h of shape (z, b.rows)."""
    return np.kron(np.eye(z, dtype=np.int64), b.T)


def intertwiner_system(q: Quiver, xdims, xmaps, ydims, ymaps) -> np.ndarray:
    """Same system as :func:`reps.intertwiner_matrix`, on numpy maps."""
    offs, o = [], 0
    for v in range(q.rank):
        offs.append(o)
        o += ydims[v] * xdims[v]
    nrows = sum(ydims[t - 1] * xdims[s - 1] for s, t in q.arrows)
    mat = np.zeros((nrows, o), dtype=np.int64)
    r0 = 0
    for a, (s, t) in enumerate(q.arrows):
        xs, yt, ys, xt = xdims[s - 1], ydims[t - 1], ydims[s - 1], xdims[t - 1]
        h = yt * xs
        if h == 0:
            continue
        if ys:
            mat[r0:r0 + h, offs[s - 1]:offs[s - 1] + ys * xs] += np.kron(ymaps[a], np.eye(xs, dtype=np.int64))
        if xt:
            mat[r0:r0 + h, offs[t - 1]:offs[t - 1] + yt * xt] -= np.kron(np.eye(yt, dtype=np.int64), xmaps[a].T)
        r0 += h
    return mat


# -- the calculus ---------------------------------------------------------------

class Calculus:
    """Maps, kernels, cokernels and extensions among sums of catalog entries."""

    def __init__(self, q: Quiver, p: int = 3):
        self.q, self.p = q, p
        self.reps = catalog(q, p)
        self.n = len(self.reps)
        table = hom_table(q, p)
        self.H = np.array(table.hom, dtype=np.int64)
        self.E = np.array(table.ext, dtype=np.int64)
        inv = _int_inverse(table.hom)
        self.Hinv = np.array(inv, dtype=np.int64)
        self.HTinv = np.array(linalg.transpose(inv), dtype=np.int64)
        self._np = [self._as_numpy(r) for r in self.reps]
        self._basis = {}
        self._sum_basis = {}
        self._outcomes = {}
        self._ext = {}

    # representations as (dims, list of numpy maps)
    def _as_numpy(self, rep: Representation):
        maps = [np.array(m, dtype=np.int64).reshape(rep.dims[t - 1], rep.dims[s - 1]) % self.p
                for m, (s, t) in zip(rep.maps, self.q.arrows)]
        return rep.dims, maps

    def dims(self, ms) -> tuple[int, ...]:
        return tuple(sum(self.reps[i].dims[v] for i in ms) for v in range(self.q.rank))

    def sum_module(self, ms):
        dims = self.dims(ms)
        maps = []
        for a, (s, t) in enumerate(self.q.arrows):
            blocks = [self._np[i][1][a] for i in ms]
            m = np.zeros((dims[t - 1], dims[s - 1]), dtype=np.int64)
            ro = co = 0
            for i, b in zip(ms, blocks):
                r, c = b.shape
                m[ro:ro + r, co:co + c] = b
                ro += r
                co += c
            maps.append(m)
        return dims, maps

    def basis(self, i: int, j: int):
        """Hom(X_i, X_j) basis; each element a list of per-vertex arrays."""
        key = (i, j)
        if key not in self._basis:
            di, mi = self._np[i]
            dj, mj = self._np[j]
            mat = intertwiner_system(self.q, di, mi, dj, mj)
            null = linalg.nullspace_mod_p(mat, self.p) if mat.shape[1] else np.zeros((0, 0), dtype=np.int64)
            out = []
            for vec in null:
                o, f = 0, []
                for v in range(self.q.rank):
                    r, c = dj[v], di[v]
                    f.append(vec[o:o + r * c].reshape(r, c))
                    o += r * c
                out.append(f)
            self._basis[key] = out
        return self._basis[key]

    def sum_basis(self, X, Y):
        """Hom(sum X, sum Y) basis as an array per vertex: (h, dimY_v, dimX_v)."""
        key = (X, Y)
        if key in self._sum_basis:
            return self._sum_basis[key]
        dx, dy = self.dims(X), self.dims(Y)
        xo = _offsets(self, X)
        yo = _offsets(self, Y)
        elems = []
        for a, i in enumerate(X):
            for b, j in enumerate(Y):
                for f in self.basis(i, j):
                    full = []
                    for v in range(self.q.rank):
                        m = np.zeros((dy[v], dx[v]), dtype=np.int64)
                        r, c = f[v].shape
                        m[yo[b][v]:yo[b][v] + r, xo[a][v]:xo[a][v] + c] = f[v]
                        full.append(m)
                    elems.append(full)
        stacks = [np.array([e[v] for e in elems], dtype=np.int64).reshape(len(elems), dy[v], dx[v])
                  for v in range(self.q.rank)]
        self._sum_basis[key] = stacks
        return stacks

    def hom_dim(self, X, Y) -> int:
        return int(sum(self.H[i, j] for i in X for j in Y))

    # decomposition -----------------------------------------------------------
    def _solve(self, hvec: np.ndarray, inv: np.ndarray) -> np.ndarray:
        mult = hvec @ inv.T
        if (mult < 0).any():
            raise DecompositionError("Hom-vector does not come from a module")
        return mult

    def multiset(self, mult_row) -> tuple[int, ...]:
        return tuple(i for i, k in enumerate(mult_row) for _ in range(int(k)))

    def decompose(self, dims, maps) -> tuple[int, ...]:
        """Catalog multiset of an explicit representation over GF(p)."""
        hv = np.zeros(self.n, dtype=np.int64)
        for z, (zd, zm) in enumerate(self._np):
            mat = intertwiner_system(self.q, zd, zm, dims, maps)
            hv[z] = mat.shape[1] - (linalg.rank_mod_p(mat, self.p) if mat.size else 0)
        mult = self._solve(hv[None, :], self.Hinv)[0]
        ms = self.multiset(mult)
        if self.dims(ms) != tuple(dims):
            raise DecompositionError("decomposition does not match the dimension vector")
        return ms

    # batched map outcomes ----------------------------------------------------
    def map_coefficients(self, X, Y) -> np.ndarray:
        h = self.hom_dim(X, Y)
        return projective_points(h, self.p)

    def kernel_mults(self, X, Y, C: np.ndarray) -> np.ndarray:
        """Kernel multiplicities for every coefficient row of ``C``."""
        p, m = self.p, C.shape[0]
        B = self.sum_basis(X, Y)
        hv = np.zeros((m, self.n), dtype=np.int64)
        for z in range(self.n):
            G = self.sum_basis((z,), X)
            K = G[0].shape[0]
            if K == 0:
                continue
            # T[l, k] = vec(B_l o G_k)
            parts = [np.einsum("lab,kbc->lkac", B[v], G[v]).reshape(B[v].shape[0], K, -1)
                     for v in range(self.q.rank)]
            T = np.concatenate(parts, axis=2) % p
            A = np.einsum("ml,lkd->mkd", C, T) % p
            hv[:, z] = K - batched_rank(A, p)
        return self._solve(hv, self.Hinv)

    def cokernel_mults(self, X, Y, C: np.ndarray) -> np.ndarray:
        p, m = self.p, C.shape[0]
        B = self.sum_basis(X, Y)
        hv = np.zeros((m, self.n), dtype=np.int64)
        for z in range(self.n):
            G = self.sum_basis(Y, (z,))
            K = G[0].shape[0]
            if K == 0:
                continue
            parts = [np.einsum("kab,lbc->lkac", G[v], B[v]).reshape(B[v].shape[0], K, -1)
                     for v in range(self.q.rank)]
            T = np.concatenate(parts, axis=2) % p
            A = np.einsum("ml,lkd->mkd", C, T) % p
            hv[:, z] = K - batched_rank(A, p)
        return self._solve(hv, self.HTinv)

    def image_mults(self, X, Y, C: np.ndarray) -> np.ndarray:
        """Image multiplicities.

        dim Hom(Z, im f) = dim{(g, x) : f x = g} - dim{x : f x = 0} with
        g in Hom(Z, Y) and x vertexwise linear Z_v -> X_v.
        """
        p, m = self.p, C.shape[0]
        q = self.q
        B = self.sum_basis(X, Y)
        dx, dy = self.dims(X), self.dims(Y)
        h = B[0].shape[0]
        frank = np.zeros((m, q.rank), dtype=np.int64)
        for v in range(q.rank):
            if dx[v] and dy[v]:
                fv = np.einsum("ml,lab->mab", C, B[v]) % p
                frank[:, v] = batched_rank(fv, p)
        hv = np.zeros((m, self.n), dtype=np.int64)
        for z in range(self.n):
            zd = self.reps[z].dims
            G = self.sum_basis((z,), Y)
            K = G[0].shape[0]
            if K == 0:
                continue
            rows = sum(dy[v] * zd[v] for v in range(q.rank))
            xcols = sum(dx[v] * zd[v] for v in range(q.rank))
            A0 = np.zeros((rows, K + xcols), dtype=np.int64)
            Al = np.zeros((h, rows, K + xcols), dtype=np.int64)
            ro, co = 0, K
            for v in range(q.rank):
                r = dy[v] * zd[v]
                c = dx[v] * zd[v]
                if r:
                    A0[ro:ro + r, :K] = -G[v].reshape(K, -1).T
                    if c:
                        for l in range(h):
                            Al[l, ro:ro + r, co:co + c] = _kron_right(B[v][l], zd[v])
                ro += r
                co += c
            A = (A0[None] + np.einsum("ml,lrc->mrc", C, Al)) % p
            nullity = K + xcols - batched_rank(A, p)
            xnull = sum(zd[v] * dx[v] for v in range(q.rank)) - (frank * np.array(zd)).sum(axis=1)
            hv[:, z] = nullity - xnull
        return self._solve(hv, self.Hinv)

    def outcomes(self, X, Y, image: bool = False):
        """Distinct (kernel, image, cokernel) multisets over all maps X -> Y.

        The zero map is included.  Without ``image`` the middle entry is None.
        Maps are enumerated up to a nonzero scalar, which changes nothing.
        """
        key = (X, Y, image)
        if key in self._outcomes:
            return self._outcomes[key]
        res = {(X, () if image else None, Y)}
        C = self.map_coefficients(X, Y)
        if C.shape[0]:
            km = self.kernel_mults(X, Y, C)
            cm = self.cokernel_mults(X, Y, C)
            im = self.image_mults(X, Y, C) if image else None
            for r in range(C.shape[0]):
                res.add((self.multiset(km[r]),
                         self.multiset(im[r]) if image else None,
                         self.multiset(cm[r])))
        out = sorted(res, key=repr)
        self._outcomes[key] = out
        return out

    # extensions --------------------------------------------------------------
    def extension_middles(self, A, B) -> set:
        """Multisets X admitting 0 -> B -> X -> A -> 0."""
        A, B = tuple(sorted(A)), tuple(sorted(B))
        key = (A, B)
        if key in self._ext:
            return self._ext[key]
        split = tuple(sorted(A + B))
        if not A or not B or sum(self.E[a, b] for a in A for b in B) == 0:
            self._ext[key] = {split}
            return self._ext[key]
        q, p = self.q, self.p
        da, ma = self.sum_module(A)
        db, mb = self.sum_module(B)
        delta = intertwiner_system(q, da, ma, db, mb) % p
        classes = _ext_complement(delta, p)
        dx = tuple(x + y for x, y in zip(db, da))

        def middle(cvec):
            maps = []
            o = 0
            for a, (s, t) in enumerate(q.arrows):
                r, c = db[t - 1], da[s - 1]
                blk = cvec[o:o + r * c].reshape(r, c)
                o += r * c
                m = np.zeros((dx[t - 1], dx[s - 1]), dtype=np.int64)
                m[:r, :db[s - 1]] = mb[a]
                m[:r, db[s - 1]:] = blk
                m[r:, db[s - 1]:] = ma[a]
                maps.append(m)
            return maps

        e = len(classes)
        Cf = projective_points(e, p)
        zero = np.zeros(delta.shape[0], dtype=np.int64)
        base = middle(zero)
        units = [middle(c) for c in classes]
        hv = np.zeros((Cf.shape[0], self.n), dtype=np.int64)
        for z, (zd, zm) in enumerate(self._np):
            M0 = intertwiner_system(q, zd, zm, dx, base)
            if M0.shape[1] == 0:
                continue
            Mk = np.array([intertwiner_system(q, zd, zm, dx, u) - M0 for u in units])
            stack = (M0[None] + np.einsum("mk,krc->mrc", Cf, Mk)) % p
            hv[:, z] = M0.shape[1] - batched_rank(stack, p)
        mults = self._solve(hv, self.Hinv)
        out = {split}
        for r in range(mults.shape[0]):
            out.add(self.multiset(mults[r]))
        self._ext[key] = out
        return out

    # explicit single maps ------------------------------------------------------
    def coordinates(self, X, Y, f) -> np.ndarray:
        """Coefficients of an explicit map in the Hom(sum X, sum Y) basis."""
        B = self.sum_basis(X, Y)
        h = B[0].shape[0]
        target = np.concatenate([np.array(f[v], dtype=np.int64).reshape(-1) for v in range(self.q.rank)]) % self.p
        if h == 0:
            if target.any():
                raise NotAnIntertwiner("map is not an intertwiner")
            return np.zeros(0, dtype=np.int64)
        cols = np.concatenate([B[v].reshape(h, -1) for v in range(self.q.rank)], axis=1).T % self.p
        aug = np.concatenate([cols, target[:, None]], axis=1)
        red, piv = linalg.rref(aug.tolist(), self.p)
        if h in piv:
            raise NotAnIntertwiner("map is not an intertwiner")
        c = np.zeros(h, dtype=np.int64)
        for i, col in enumerate(piv):
            c[col] = red[i][h]
        return c


def _offsets(calc: Calculus, ms):
    out, acc = [], [0] * calc.q.rank
    for i in ms:
        out.append(tuple(acc))
        acc = [a + d for a, d in zip(acc, calc.reps[i].dims)]
    return out


def _ext_complement(delta: np.ndarray, p: int) -> list[np.ndarray]:
    """Standard basis vectors spanning a complement of the column space."""
    nr = delta.shape[0]
    aug = np.concatenate([delta % p, np.eye(nr, dtype=np.int64)], axis=1)
    _, piv = linalg.rref(aug.tolist(), p)
    nc = delta.shape[1]
    out = []
    for c in piv:
        if c >= nc:
            e = np.zeros(nr, dtype=np.int64)
            e[c - nc] = 1
            out.append(e)
    return out


def _int_inverse(mat) -> list[list[int]]:
    n = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(mat)]
    red, piv = linalg.rref(aug, 0)
    if piv[:n] != list(range(n)):
        raise DecompositionError("Hom table is singular")
    inv = [[x for x in row[n:]] for row in red]
    if any(x.denominator != 1 for row in inv for x in row):
        raise DecompositionError("Hom table has no integral inverse")
    return [[int(x) for x in row] for row in inv]


@functools.lru_cache(maxsize=None)
def calculus(q: Quiver, p: int = 3) -> Calculus:
    return Calculus(q, p)


def multisets(indices, bound: int):
    """Nonempty multisets over ``indices`` with at most ``bound`` elements."""
    idx = sorted(indices)
    for k in range(1, bound + 1):
        yield from itertools.combinations_with_replacement(idx, k)


# -- spec-level operations ------------------------------------------------------

def decompose(rep: Representation, p: int | None = None) -> tuple[int, ...]:
    """Catalog multiset of an explicit representation (characteristic > 0)."""
    p = p or rep.char
    if not p:
        raise ValueError("decomposition runs over a prime field")
    calc = calculus(rep.quiver, p)
    dims, maps = calc._as_numpy(rep.over(p))
    return calc.decompose(dims, maps)


def map_kernel_cokernel(q: Quiver, X, Y, f, p: int = 3):
    """(kernel, image, cokernel) multisets of an explicit map sum X -> sum Y.

    ``f`` is a list of per-vertex matrices (block matrices of intertwiners).
    """
    calc = calculus(q, p)
    X, Y = tuple(X), tuple(Y)
    c = calc.coordinates(X, Y, f)[None, :]
    if not c.any():
        return X, (), Y
    ker = calc.multiset(calc.kernel_mults(X, Y, c)[0])
    im = calc.multiset(calc.image_mults(X, Y, c)[0])
    cok = calc.multiset(calc.cokernel_mults(X, Y, c)[0])
    return ker, im, cok


def extension_middles(q: Quiver, A, B, p: int = 3) -> set:
    return calculus(q, p).extension_middles(tuple(A), tuple(B))
