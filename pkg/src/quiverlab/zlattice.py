"""Integer forms of indecomposables and Hom/Ext over ZQ.

For a vertexwise free ZQ-module M the standard resolution

    0 -> (+)_{a: i->j} P_j (x) M_i -> (+)_i P_i (x) M_i -> M -> 0

turns Hom(-, L) into the two-term complex C^0 -> C^1 whose differential is the
intertwiner matrix.  Hom is its kernel and Ext^1 its cokernel, both read off
a Smith normal form over the integers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import linalg
from .quiver import Quiver, positive_roots
from .reps import Representation, catalog, hom_dim, indecomposable_for_root, intertwiner_matrix


class NonIntegralInput(ValueError):
    pass


class TorsionDetected(RuntimeError):
    pass


class IdealNotContained(ValueError):
    pass


@dataclass(frozen=True)
class ZLattice:
    quiver: Quiver
    ranks: tuple[int, ...]
    maps: tuple[tuple[tuple[int, ...], ...], ...]

    def as_rep(self) -> Representation:
        return Representation(self.quiver, self.ranks, self.maps, 0)


def lattice_lift(X: Representation) -> ZLattice:
    """Integer form with the same structure matrices as ``X``."""
    for m in X.maps:
        for row in m:
            for x in row:
                if not isinstance(x, (int, np.integer)):
                    raise NonIntegralInput(f"entry {x!r} is not an integer")
    L = ZLattice(X.quiver, X.dims, X.maps)
    if ext1_z(L, L, check=False) != (0, []):
        raise TorsionDetected(f"lift of {X.dims} is not rigid")
    return L


def lift_root(q: Quiver, d) -> ZLattice:
    return lattice_lift(indecomposable_for_root(q, tuple(d), 0))


def _system(M: ZLattice, L: ZLattice) -> np.ndarray:
    if M.quiver != L.quiver:
        raise ValueError("lattices over different quivers")
    return intertwiner_matrix(M.as_rep(), L.as_rep())


def _factors(mat: np.ndarray) -> list[int]:
    if mat.size == 0:
        return []
    return linalg.smith_normal_form(mat.tolist())


def hom_z(M: ZLattice, L: ZLattice) -> tuple[int, list[int]]:
    """Rank of Hom_ZQ(M, L) and its torsion (a kernel, so always free)."""
    mat = _system(M, L)
    return mat.shape[1] - len(_factors(mat)), []


def ext1_z(M: ZLattice, L: ZLattice, check: bool = True) -> tuple[int, list[int]]:
    """Free rank and torsion invariants of Ext^1_ZQ(M, L)."""
    mat = _system(M, L)
    f = _factors(mat)
    torsion = [x for x in f if x > 1]
    if check and torsion:
        raise TorsionDetected(f"Ext^1 has torsion {torsion}")
    return mat.shape[0] - len(f), torsion


def derived_hom_z(M: ZLattice, L: ZLattice, n: int) -> tuple[int, list[int]]:
    """H^n of Hom(P, L) for the two-term resolution P of M.

    The complex is assembled on all of Z with zero groups outside degrees 0
    and 1, and every degree goes through the same kernel/image computation.
    """
    mat = _system(M, L)
    dims = {0: mat.shape[1], 1: mat.shape[0]}

    def diff(k):
        # d^k : C^k -> C^{k+1}
        if k == 0:
            return mat
        return np.zeros((dims.get(k + 1, 0), dims.get(k, 0)), dtype=np.int64)

    out_f = _factors(diff(n))
    in_f = _factors(diff(n - 1))
    kernel_rank = dims.get(n, 0) - len(out_f)
    return kernel_rank - len(in_f), [x for x in in_f if x > 1]


def reduce_mod(M: ZLattice, p: int) -> Representation:
    """Base change to GF(p), or to Q for p = 0; checks indecomposability."""
    X = Representation(M.quiver, M.ranks, M.maps, p)
    if sum(M.ranks) and hom_dim(X, X) != 1:
        raise RuntimeError(f"reduction of {M.ranks} mod {p} is not a brick")
    return X


# -- Koszul complexes ------------------------------------------------------------

@dataclass(frozen=True)
class KoszulComplex:
    """K((n)): Z --n--> Z in degrees -1, 0."""

    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("generator must be non-negative")

    degrees = (-1, 0)

    def differential(self) -> list[list[int]]:
        return [[self.n]]


def koszul_homology_mod(K: KoszulComplex, p: int) -> dict[int, int]:
    """Homology dimensions of GF(p) (x) K, nonzero degrees only."""
    r = linalg.rank(K.differential(), p)
    out = {-1: 1 - r, 0: 1 - r}
    return {k: v for k, v in out.items() if v}


# -- the Esigma desk check --------------------------------------------------------

def esigma_hom_dims(q: Quiver, p: int, qprime: int, M, L) -> dict[int, int]:
    """dim Hom_D(ZQ)(K((qprime)) (x) M~, GF(p) (x) L~[j]) for every j.

    The source is the total complex of K((qprime)) with the resolution of M~;
    mapping it into GF(p) (x) L~ gives a complex D^0 -> D^1 -> D^2 with
    D^0 = C^0, D^1 = C^1 + C^0, D^2 = C^1 over GF(p).
    """
    _check_ideal(p, qprime)
    Mt, Lt = lift_root(q, M), lift_root(q, L)
    delta = _system(Mt, Lt) % p
    c1, c0 = delta.shape
    s = qprime % p
    d0 = np.vstack([delta, s * np.eye(c0, dtype=np.int64)]) if c0 else np.zeros((c1 + c0, 0), dtype=np.int64)
    d1 = np.hstack([s * np.eye(c1, dtype=np.int64), -delta]) if c1 else np.zeros((0, c1 + c0), dtype=np.int64)
    if (np.dot(d1, d0) % p).any():
        raise RuntimeError("total complex is not a complex")
    r0 = linalg.rank_mod_p(d0, p) if d0.size else 0
    r1 = linalg.rank_mod_p(d1, p) if d1.size else 0
    dims = {0: c0 - r0, 1: (c1 + c0) - r1 - r0, 2: c1 - r1}
    return {j: v for j, v in dims.items() if v}


def _check_ideal(p: int, qprime: int):
    if qprime % p:
        raise IdealNotContained(f"({qprime}) is not contained in ({p})")


def esigma_instance(q: Quiver, p: int, qprime: int, M, L) -> tuple[bool, bool]:
    """(a, b): a = the Koszul-twisted derived Hom vanishes in every degree,
    b = hom and ext of (M, L) both vanish over the field."""
    _check_ideal(p, qprime)
    a = not esigma_hom_dims(q, p, qprime, M, L)
    X = indecomposable_for_root(q, tuple(M), p)
    Y = indecomposable_for_root(q, tuple(L), p)
    h = hom_dim(X, Y)
    e = h - _euler(q, M, L)
    return a, (h == 0 and e == 0)


def esigma_aisle_instance(q: Quiver, p: int, qprime: int, M, L) -> tuple[bool, bool]:
    """Aisle variant: vanishing in degrees <= 0 against hom(M, L) = 0."""
    _check_ideal(p, qprime)
    dims = esigma_hom_dims(q, p, qprime, M, L)
    a = all(v == 0 for j, v in dims.items() if j <= 0)
    X = indecomposable_for_root(q, tuple(M), p)
    Y = indecomposable_for_root(q, tuple(L), p)
    return a, hom_dim(X, Y) == 0


def _euler(q, d, e):
    from .quiver import euler_form
    return euler_form(q, d, e)


# -- reports ---------------------------------------------------------------------

def orthoprop_records(q: Quiver, chars=(2, 3, 0)) -> list[dict]:
    """One record per ordered root pair comparing ZQ ranks with field tables."""
    from .reps import hom_table
    roots = positive_roots(q)
    lifts = [lattice_lift(x) for x in catalog(q, 0)]
    tables = [hom_table(q, c) for c in chars]
    out = []
    for i, M in enumerate(lifts):
        for j, L in enumerate(lifts):
            h = hom_z(M, L)
            e = ext1_z(M, L, check=False)
            exp_h = [t.hom[i][j] for t in tables]
            exp_e = [t.ext[i][j] for t in tables]
            ok = (not h[1] and not e[1] and all(x == h[0] for x in exp_h)
                  and all(x == e[0] for x in exp_e))
            out.append({"check": "orthoprop", "quiver": q.name, "M": list(roots[i]), "L": list(roots[j]),
                        "hom_rank": h[0], "hom_torsion": h[1], "ext_rank": e[0], "ext_torsion": e[1],
                        "expected_hom": exp_h, "expected_ext": exp_e, "pass": ok})
    return out


def records_to_jsonl(records) -> str:
    return "".join(json.dumps(r, sort_keys=True) + "\n" for r in records)
