"""Representations of Dynkin quivers over prime fields and the rationals.

Indecomposables are built with BGP reflection functors from simples and then
rescaled so that every structure matrix is a 0/1 matrix (tree-module form).
"""

from __future__ import annotations

import functools
import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import linalg
from .quiver import Quiver, euler_form, positive_roots


class NotARoot(ValueError):
    pass


class CharacteristicMismatch(ValueError):
    pass


class NegativeExt(RuntimeError):
    """Hom - Euler came out negative: the catalog is broken."""


Matrix = tuple  # tuple of row tuples


def _freeze(mat) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in mat)


@dataclass(frozen=True)
class Representation:
    """Integer structure matrices read over GF(char), or over Q if char == 0.

    ``maps[k]`` belongs to ``quiver.arrows[k] = (s, t)`` and has shape
    ``dims[t-1] x dims[s-1]``.
    """

    quiver: Quiver
    dims: tuple[int, ...]
    maps: tuple[Matrix, ...]
    char: int = 0

    def __post_init__(self):
        if len(self.dims) != self.quiver.rank or len(self.maps) != len(self.quiver.arrows):
            raise ValueError("shape mismatch with the quiver")
        for (s, t), m in zip(self.quiver.arrows, self.maps):
            rows, cols = self.dims[t - 1], self.dims[s - 1]
            if len(m) != rows or any(len(r) != cols for r in m):
                raise ValueError(f"map on arrow {s}->{t} has the wrong shape")

    def over(self, char: int) -> "Representation":
        return Representation(self.quiver, self.dims, self.maps, char)

    def is_zero_one(self) -> bool:
        return all(x in (0, 1) for m in self.maps for row in m for x in row)

    def total_dim(self) -> int:
        return sum(self.dims)


def simple(q: Quiver, k: int, char: int = 0) -> Representation:
    dims = tuple(1 if v == k else 0 for v in q.vertices)
    maps = tuple(_freeze(linalg.zeros(dims[t - 1], dims[s - 1])) for s, t in q.arrows)
    return Representation(q, dims, maps, char)


def direct_sum(reps) -> Representation:
    reps = list(reps)
    q = reps[0].quiver
    dims = tuple(sum(r.dims[v] for r in reps) for v in range(q.rank))
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        m = linalg.zeros(dims[t - 1], dims[s - 1])
        ro = co = 0
        for r in reps:
            blk = r.maps[a]
            for i, row in enumerate(blk):
                for j, x in enumerate(row):
                    m[ro + i][co + j] = x
            ro += r.dims[t - 1]
            co += r.dims[s - 1]
        maps.append(_freeze(m))
    return Representation(q, dims, tuple(maps), reps[0].char)


# -- construction -------------------------------------------------------------

def _sink_order(q: Quiver) -> list[int]:
    """Vertex order with every arrow's target before its source."""
    order, left = [], set(q.vertices)
    while left:
        for v in sorted(left):
            if all(t not in left or t == v for s, t in q.arrows if s == v):
                order.append(v)
                left.remove(v)
                break
    return order


def _neighbours(q: Quiver, k: int) -> list[int]:
    return [t if s == k else s for s, t in q.arrows if k in (s, t)]


def _reflect_minus(rep_maps, dims, q: Quiver, k: int):
    """BGP functor at the source ``k`` of ``q``; rational matrices in and out.

    Returns (maps, dims) for the quiver ``q.reflect(k)``.
    """
    out = [a for a, (s, t) in enumerate(q.arrows) if s == k]
    stacked = []
    for a in out:
        stacked.extend(rep_maps[a])
    total = sum(dims[q.arrows[a][1] - 1] for a in out)
    # cokernel of Y_k -> (+) Y_i, as the rows of a left-null basis
    coker = linalg.left_nullspace(stacked, 0, total) if total else []
    new_dims = list(dims)
    new_dims[k - 1] = len(coker)
    new_maps = list(rep_maps)
    off = 0
    for a in out:
        w = dims[q.arrows[a][1] - 1]
        new_maps[a] = [row[off:off + w] for row in coker]
        off += w
    return new_maps, tuple(new_dims)


@functools.lru_cache(maxsize=None)
def _bgp(q: Quiver, d: tuple[int, ...]):
    n = q.rank
    order = _sink_order(q)
    cur_q, cur_d, path = q, tuple(d), []
    for step in range(4 * n * (n + 1) * 8):
        k = order[step % n]
        if k not in cur_q.sinks():
            raise RuntimeError("sink order is not admissible")
        unit = tuple(1 if v == k else 0 for v in cur_q.vertices)
        if cur_d == unit:
            break
        nd = list(cur_d)
        nd[k - 1] = sum(cur_d[j - 1] for j in _neighbours(cur_q, k)) - cur_d[k - 1]
        if nd[k - 1] < 0:
            raise NotARoot(f"{d} is not a positive root")
        path.append(k)
        cur_q, cur_d = cur_q.reflect(k), tuple(nd)
    else:
        raise NotARoot(f"{d} is not a positive root")
    s = simple(cur_q, k)
    maps = [[[Fraction(x) for x in row] for row in m] for m in s.maps]
    dims = s.dims
    for k in reversed(path):
        cur_q = cur_q.reflect(k)
        maps, dims = _reflect_minus(maps, dims, cur_q.reflect(k), k)
    assert cur_q == q and dims == tuple(d)
    return maps


def _tree_rescale(q: Quiver, dims, maps):
    """Rescale basis vectors so every nonzero entry becomes 1.

    Possible whenever the coefficient quiver (basis vectors joined by nonzero
    entries) is a forest.  Returns None otherwise.
    """
    nodes = [(v, i) for v in q.vertices for i in range(dims[v - 1])]
    adj = {x: [] for x in nodes}
    nedges = 0
    for a, (s, t) in enumerate(q.arrows):
        for r, row in enumerate(maps[a]):
            for c, x in enumerate(row):
                if x != 0:
                    adj[(s, c)].append(((t, r), a, x, "out"))
                    adj[(t, r)].append(((s, c), a, x, "in"))
                    nedges += 1
    scale = {}
    comps = 0
    for root in nodes:
        if root in scale:
            continue
        comps += 1
        scale[root] = Fraction(1)
        stack = [root]
        while stack:
            u = stack.pop()
            for w, a, x, kind in adj[u]:
                if w in scale:
                    continue
                # entry x maps source basis (lam) to target basis (mu): x*lam/mu == 1
                scale[w] = x * scale[u] if kind == "out" else scale[u] / x
                stack.append(w)
    if nedges != len(nodes) - comps:
        return None
    new = []
    for a, (s, t) in enumerate(q.arrows):
        m = [[x * scale[(s, c)] / scale[(t, r)] for c, x in enumerate(row)]
             for r, row in enumerate(maps[a])]
        if any(x not in (0, 1) for row in m for x in row):
            return None
        new.append(_freeze(m))
    return tuple(new)


def _nnz(maps):
    return sum(1 for m in maps for row in m for x in row if x != 0)


def _change_basis(q: Quiver, dims, maps, v, i, j, c):
    """New basis e_i' = e_i + c e_j at vertex v."""
    new = [[list(row) for row in m] for m in maps]
    for a, (s, t) in enumerate(q.arrows):
        if s == v:  # columns of outgoing maps
            for row in new[a]:
                row[i] = row[i] + c * row[j]
        if t == v:  # coordinates of incoming maps
            m = new[a]
            m[j] = [x - c * y for x, y in zip(m[j], m[i])]
    return new


def _sparsify(q: Quiver, dims, maps, rounds=200):
    """Greedy basis changes that lower the number of nonzero entries."""
    cur = [[list(row) for row in m] for m in maps]
    best = _nnz(cur)
    for _ in range(rounds):
        improved = None
        for v in q.vertices:
            n = dims[v - 1]
            for i in range(n):
                for j in range(n):
                    if i == j:
                        continue
                    cands = set()
                    for a, (s, t) in enumerate(q.arrows):
                        if s == v:
                            for row in cur[a]:
                                if row[j] != 0 and row[i] != 0:
                                    cands.add(-row[i] / row[j])
                        if t == v:
                            for x, y in zip(cur[a][j], cur[a][i]):
                                if x != 0 and y != 0:
                                    cands.add(x / y)
                    for c in cands:
                        trial = _change_basis(q, dims, cur, v, i, j, c)
                        k = _nnz(trial)
                        if k < best:
                            best, improved = k, trial
        if improved is None:
            break
        cur = improved
    return cur


def _integral_fallback(maps):
    out = []
    for m in maps:
        den = 1
        for row in m:
            for x in row:
                den = den * Fraction(x).denominator // np.gcd(den, Fraction(x).denominator)
        out.append(_freeze([[x * den for x in row] for row in m]))
    return tuple(out)


# roots whose BGP output could not be put in 0/1 form; see indecomposable_for_root
UNNORMALIZED: set = set()


@functools.lru_cache(maxsize=None)
def _construct(q: Quiver, d: tuple[int, ...]) -> tuple[Matrix, ...]:
    maps = _bgp(q, d)
    tree = _tree_rescale(q, d, maps)
    if tree is None:
        tree = _tree_rescale(q, d, _sparsify(q, d, maps))
    if tree is None:
        UNNORMALIZED.add((q, d))
        return _integral_fallback(maps)
    return tree


def indecomposable_for_root(q: Quiver, d, char: int = 0) -> Representation:
    """The indecomposable with dimension vector ``d``, in 0/1 form.

    Deterministic for fixed ``(q, d)``.  If the rescaling to 0/1 form fails
    the integral BGP matrices are used instead and ``(q, d)`` is recorded in
    ``UNNORMALIZED``.
    """
    d = tuple(int(x) for x in d)
    if len(d) != q.rank or any(x < 0 for x in d) or not any(d):
        raise NotARoot(f"{d} is not a positive root of {q.name}")
    if euler_form(q, d, d) != 1:
        raise NotARoot(f"{d} is not a positive root of {q.name}")
    return Representation(q, d, _construct(q, d), char)


# -- Hom and Ext ------------------------------------------------------------

def intertwiner_matrix(X: Representation, Y: Representation) -> np.ndarray:
    """Integer matrix of f -> (Y_a f_s - f_t X_a)_a on (+)_v Hom(X_v, Y_v).

    Unknowns are the row-major entries of f_1, f_2, ...; one block of rows per
    arrow.  Its kernel is Hom(X, Y) and its cokernel Ext^1(X, Y).
    """
    q = X.quiver
    offs, o = [], 0
    for v in range(q.rank):
        offs.append(o)
        o += Y.dims[v] * X.dims[v]
    nrows = sum(Y.dims[t - 1] * X.dims[s - 1] for s, t in q.arrows)
    mat = np.zeros((nrows, o), dtype=np.int64)
    r0 = 0
    for a, (s, t) in enumerate(q.arrows):
        xs, yt, ys, xt = X.dims[s - 1], Y.dims[t - 1], Y.dims[s - 1], X.dims[t - 1]
        h = yt * xs
        if h == 0:
            continue
        if ys:
            ya = np.array(Y.maps[a], dtype=np.int64).reshape(yt, ys)
            mat[r0:r0 + h, offs[s - 1]:offs[s - 1] + ys * xs] += np.kron(ya, np.eye(xs, dtype=np.int64))
        if xt:
            xa = np.array(X.maps[a], dtype=np.int64).reshape(xt, xs)
            mat[r0:r0 + h, offs[t - 1]:offs[t - 1] + yt * xt] -= np.kron(np.eye(yt, dtype=np.int64), xa.T)
        r0 += h
    return mat


def _check_chars(X, Y):
    if X.char != Y.char:
        raise CharacteristicMismatch(f"characteristics {X.char} and {Y.char} differ")
    if X.quiver != Y.quiver:
        raise ValueError("representations of different quivers")


def _unflatten(vec, X: Representation, Y: Representation):
    out, o = [], 0
    for v in range(X.quiver.rank):
        r, c = Y.dims[v], X.dims[v]
        out.append(tuple(tuple(int(vec[o + i * c + j]) if X.char else vec[o + i * c + j]
                               for j in range(c)) for i in range(r)))
        o += r * c
    return tuple(out)


def hom_basis(X: Representation, Y: Representation) -> list:
    """Basis of Hom(X, Y): each element is a tuple of per-vertex matrices."""
    _check_chars(X, Y)
    mat = intertwiner_matrix(X, Y)
    p = X.char
    if mat.shape[1] == 0:
        return []
    if p:
        basis = linalg.nullspace_mod_p(mat, p)
    else:
        basis = linalg.nullspace(mat.tolist(), 0, mat.shape[1])
    return [_unflatten(list(b), X, Y) for b in basis]


def hom_dim(X: Representation, Y: Representation) -> int:
    _check_chars(X, Y)
    mat = intertwiner_matrix(X, Y)
    return mat.shape[1] - linalg.rank(mat.tolist(), X.char) if mat.shape[1] else 0


def ext_dim_direct(X: Representation, Y: Representation) -> int:
    """dim Ext^1 as the cokernel dimension of the intertwiner matrix."""
    _check_chars(X, Y)
    mat = intertwiner_matrix(X, Y)
    if mat.shape[0] == 0:
        return 0
    return mat.shape[0] - (linalg.rank(mat.tolist(), X.char) if mat.shape[1] else 0)


def ext_dim(X: Representation, Y: Representation) -> int:
    """dim Ext^1(X, Y) = dim Hom(X, Y) - <dim X, dim Y> (hereditary)."""
    val = hom_dim(X, Y) - euler_form(X.quiver, X.dims, Y.dims)
    if val < 0:
        raise NegativeExt(f"negative Ext between {X.dims} and {Y.dims}")
    return val


def is_intertwiner(f, X: Representation, Y: Representation) -> bool:
    p = X.char
    for a, (s, t) in enumerate(X.quiver.arrows):
        lhs = linalg.matmul(Y.maps[a], f[s - 1]) if Y.dims[t - 1] and X.dims[s - 1] else []
        rhs = linalg.matmul(f[t - 1], X.maps[a]) if Y.dims[t - 1] and X.dims[s - 1] else []
        for rl, rr in zip(lhs, rhs):
            for a1, b1 in zip(rl, rr):
                if (a1 - b1) % p if p else a1 != b1:
                    return False
    return True


# -- catalogs and tables --------------------------------------------------------

@functools.lru_cache(maxsize=None)
def catalog(q: Quiver, char: int = 0) -> tuple[Representation, ...]:
    """One indecomposable per positive root, in ``positive_roots`` order."""
    return tuple(indecomposable_for_root(q, d, char) for d in positive_roots(q))


@dataclass(frozen=True)
class HomTable:
    quiver: Quiver
    char: int
    catalog: tuple[tuple[int, ...], ...]
    hom: tuple[tuple[int, ...], ...]
    ext: tuple[tuple[int, ...], ...]

    def index(self, root) -> int:
        return self.catalog.index(tuple(root))

    def same_tables(self, other: "HomTable") -> bool:
        return (self.catalog, self.hom, self.ext) == (other.catalog, other.hom, other.ext)

    def to_json(self) -> str:
        return json.dumps({
            "quiver": json.loads(self.quiver.to_json()),
            "char": self.char,
            "catalog": [list(r) for r in self.catalog],
            "hom": [list(r) for r in self.hom],
            "ext": [list(r) for r in self.ext],
        }, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "HomTable":
        d = json.loads(text)
        q = Quiver.from_json(json.dumps(d["quiver"]))
        tup = lambda rows: tuple(tuple(int(x) for x in r) for r in rows)  # noqa: E731
        return cls(q, int(d["char"]), tup(d["catalog"]), tup(d["hom"]), tup(d["ext"]))


def _compute_hom_table(q: Quiver, char: int) -> HomTable:
    cat = catalog(q, char)
    hom = [[hom_dim(x, y) for y in cat] for x in cat]
    ext = [[hom[i][j] - euler_form(q, x.dims, y.dims) for j, y in enumerate(cat)]
           for i, x in enumerate(cat)]
    if any(v < 0 for row in ext for v in row):
        raise NegativeExt("catalog produced a negative Ext dimension")
    return HomTable(q, char, tuple(x.dims for x in cat),
                    tuple(map(tuple, hom)), tuple(map(tuple, ext)))


def cache_key(q: Quiver, char: int) -> str:
    raw = f"{q.dynkin_type}|{q.rank}|{q.orientation}|{char}"
    return hashlib.sha256(raw.encode()).hexdigest()[:16]


@functools.lru_cache(maxsize=None)
def _hom_table_memo(q: Quiver, char: int) -> HomTable:
    return _compute_hom_table(q, char)


def hom_table(q: Quiver, char: int = 2, cache_dir=None) -> HomTable:
    """Pairwise Hom/Ext dimensions over the catalog.

    With ``cache_dir`` the table is stored as JSON under a key derived from
    (type, rank, orientation, characteristic).
    """
    if cache_dir is None:
        return _hom_table_memo(q, char)
    path = Path(cache_dir) / f"homtable-{q.name}-{cache_key(q, char)}.json"
    if path.exists():
        return HomTable.from_json(path.read_text())
    table = _hom_table_memo(q, char)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(table.to_json())
    return table
