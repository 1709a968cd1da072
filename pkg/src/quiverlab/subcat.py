"""Additive subcategories of mod(kQ) and their closure operators.

A subcategory is stored by its indecomposable members only (a bitmask over
the root catalog).  Closures are computed as least fixpoints of Horn rules
"if these indecomposables are present, so are those", where each rule comes
from one morphism (or one extension) between direct sums of at most
``bound`` catalog summands over GF(p).
"""

from __future__ import annotations

import functools
import itertools
import json
from dataclasses import dataclass

import numpy as np

from .lattice import FiniteLattice
from .morphisms import Calculus, calculus, multisets
from .quiver import Quiver, noncrossing_count
from .reps import HomTable, hom_table


class NotIceClosed(ValueError):
    pass


class UnsupportedType(ValueError):
    def __init__(self, message: str, count: int | None = None):
        super().__init__(message)
        self.count = count


DEFAULT_P = 3
DEFAULT_BOUND = 2


@dataclass(frozen=True, order=True)
class Subcat:
    size: int
    mask: int

    @classmethod
    def of(cls, size: int, members=()) -> "Subcat":
        m = 0
        for i in members:
            if not 0 <= i < size:
                raise IndexError(f"catalog index {i} out of range")
            m |= 1 << i
        return cls(size, m)

    @classmethod
    def full(cls, size: int) -> "Subcat":
        return cls(size, (1 << size) - 1)

    @classmethod
    def from_vector(cls, vec) -> "Subcat":
        return cls.of(len(vec), [i for i, b in enumerate(vec) if b])

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.size) if self.mask >> i & 1)

    @property
    def vector(self) -> tuple[int, ...]:
        return tuple(self.mask >> i & 1 for i in range(self.size))

    def __contains__(self, i: int) -> bool:
        return bool(self.mask >> i & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def issubset(self, other: "Subcat") -> bool:
        return self.mask & ~other.mask == 0

    def __or__(self, other: "Subcat") -> "Subcat":
        return Subcat(self.size, self.mask | other.mask)

    def __and__(self, other: "Subcat") -> "Subcat":
        return Subcat(self.size, self.mask & other.mask)

    def roots(self, table: HomTable) -> list[tuple[int, ...]]:
        return sorted(table.catalog[i] for i in self.members)


def _mask(ms) -> int:
    m = 0
    for i in ms:
        m |= 1 << i
    return m


def _fixpoint(start: int, prem: np.ndarray, concl: np.ndarray) -> int:
    s = start
    while True:
        app = (prem & ~np.int64(s)) == 0
        new = s | int(np.bitwise_or.reduce(concl[app])) if app.any() else s
        if new == s:
            return s
        s = new


def _rules(pairs) -> tuple[np.ndarray, np.ndarray]:
    """Merge (premise, conclusion) pairs, dropping the trivial ones."""
    merged: dict[int, int] = {}
    for p, c in pairs:
        if c & ~p:
            merged[p] = merged.get(p, 0) | c
    keys = sorted(merged)
    return (np.array(keys, dtype=np.int64), np.array([merged[k] for k in keys], dtype=np.int64))


class Closures:
    """Closure operators for one quiver at fixed field and multiplicity bound.

    ``bound`` caps the number of indecomposable summands on each side of an
    enumerated morphism (and of each end term of an enumerated extension).
    """

    def __init__(self, q: Quiver, p: int = DEFAULT_P, bound: int = DEFAULT_BOUND):
        self.q, self.p, self.bound = q, p, bound
        self.calc: Calculus = calculus(q, p)
        self.n = self.calc.n
        self.table = hom_table(q, p)
        self._ms = list(multisets(range(self.n), bound))

    # raw facts ---------------------------------------------------------------
    @functools.cached_property
    def map_facts(self) -> np.ndarray:
        """Rows (supp X, supp Y, supp ker, supp coker) over all bounded maps."""
        rows = set()
        for X in self._ms:
            for Y in self._ms:
                for k, _, c in self.calc.outcomes(X, Y):
                    rows.add((_mask(X), _mask(Y), _mask(k), _mask(c)))
        return np.array(sorted(rows), dtype=np.int64).reshape(-1, 4)

    @functools.cached_property
    def image_facts(self) -> np.ndarray:
        """Rows (supp X, supp Y, supp image, supp coker)."""
        rows = set()
        for X in self._ms:
            for Y in self._ms:
                for _, i, c in self.calc.outcomes(X, Y, image=True):
                    rows.add((_mask(X), _mask(Y), _mask(i), _mask(c)))
        return np.array(sorted(rows), dtype=np.int64).reshape(-1, 4)

    @functools.cached_property
    def ext_facts(self) -> np.ndarray:
        """Rows (supp A | supp B, supp X) for 0 -> B -> X -> A -> 0."""
        rows = set()
        for A in self._ms:
            for B in self._ms:
                for X in self.calc.extension_middles(A, B):
                    rows.add((_mask(A) | _mask(B), _mask(X)))
        return np.array(sorted(rows), dtype=np.int64).reshape(-1, 2)

    # rule sets -----------------------------------------------------------------
    @functools.cached_property
    def ext_rules(self):
        return _rules(map(tuple, self.ext_facts.tolist()))

    @functools.cached_property
    def gen_rules(self):
        f = self.image_facts.tolist()
        return _rules([(x, i) for x, _, i, _ in f] + [(y, c) for _, y, _, c in f])

    @functools.cached_property
    def filtgen_rules(self):
        return _concat(self.gen_rules, self.ext_rules)

    @functools.cached_property
    def ice_rules(self):
        f = self.image_facts.tolist()
        return _concat(_rules([(x | y, i | c) for x, y, i, c in f]), self.ext_rules)

    @functools.cached_property
    def wide_rules(self):
        f = self.map_facts.tolist()
        return _concat(_rules([(x | y, k | c) for x, y, k, c in f]), self.ext_rules)

    # closures ----------------------------------------------------------------
    def _close(self, S: Subcat, rules) -> Subcat:
        self._check(S)
        return Subcat(self.n, _fixpoint(S.mask, *rules))

    def _check(self, S: Subcat):
        if S.size != self.n:
            raise ValueError("subcategory does not match the catalog size")

    def gen_closure(self, S: Subcat) -> Subcat:
        return self._close(S, self.gen_rules)

    def ext_closure(self, S: Subcat) -> Subcat:
        return self._close(S, self.ext_rules)

    def filtgen_closure(self, S: Subcat) -> Subcat:
        return self._close(S, self.filtgen_rules)

    def ice_closure(self, S: Subcat) -> Subcat:
        return self._close(S, self.ice_rules)

    def wide_closure(self, S: Subcat) -> Subcat:
        return self._close(S, self.wide_rules)

    def is_ice(self, S: Subcat) -> bool:
        return self.ice_closure(S) == S

    def is_wide(self, S: Subcat) -> bool:
        return self.wide_closure(S) == S

    def closed_sets(self, rules) -> list[Subcat]:
        """Every fixpoint of a closure operator, grown one element at a time."""
        start = _fixpoint(0, *rules)
        seen = {start}
        todo = [start]
        while todo:
            s = todo.pop()
            for i in range(self.n):
                if not s >> i & 1:
                    t = _fixpoint(s | 1 << i, *rules)
                    if t not in seen:
                        seen.add(t)
                        todo.append(t)
        return sorted((Subcat(self.n, m) for m in seen), key=_subcat_key)

    def ice_closed(self) -> list[Subcat]:
        return self.closed_sets(self.ice_rules)

    # alpha -------------------------------------------------------------------
    def _require_ice(self, H: Subcat):
        if not self.is_ice(H):
            raise NotIceClosed(f"{H.members} is not ICE-closed")

    def _sums_over(self, H: Subcat):
        return list(multisets(H.members, self.bound))

    def alpha(self, H: Subcat) -> Subcat:
        """Members M such that every map from add H to M has kernel in H."""
        self._require_ice(H)
        keep = []
        sources = self._sums_over(H)
        for m in H.members:
            ok = all(_mask(k) & ~H.mask == 0
                     for X in sources for k, _, _ in self.calc.outcomes(X, (m,)))
            if ok:
                keep.append(m)
        return Subcat.of(self.n, keep)

    def split_projectives(self, H: Subcat) -> Subcat:
        """Members U such that every surjection from add H onto U splits."""
        out = []
        sources = self._sums_over(H)
        for u in H.members:
            ok = True
            for X in sources:
                for k, _, c in self.calc.outcomes(X, (u,)):
                    if not c and tuple(sorted(k + (u,))) != X:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                out.append(u)
        return Subcat.of(self.n, out)

    def alpha_split(self, H: Subcat) -> Subcat:
        """Members M whose kernels from split-projective covers stay in H."""
        self._require_ice(H)
        U = self.split_projectives(H)
        sources = self._sums_over(U)
        keep = []
        for m in H.members:
            ok = all(_mask(k) & ~H.mask == 0
                     for Z in sources for k, _, c in self.calc.outcomes(Z, (m,)) if not c)
            if ok:
                keep.append(m)
        return Subcat.of(self.n, keep)


def _concat(a, b):
    return _rules(list(zip(a[0].tolist(), a[1].tolist())) + list(zip(b[0].tolist(), b[1].tolist())))


def _subcat_key(s: Subcat):
    return (len(s), s.members)


@functools.lru_cache(maxsize=None)
def closures(q: Quiver, p: int = DEFAULT_P, bound: int = DEFAULT_BOUND) -> Closures:
    return Closures(q, p, bound)


# -- table-level operations ---------------------------------------------------

def semibricks(t: HomTable) -> list[Subcat]:
    """Subsets of the catalog that are pairwise Hom-orthogonal in both directions."""
    n = len(t.catalog)
    ok = [[i == j or (t.hom[i][j] == 0 and t.hom[j][i] == 0) for j in range(n)] for i in range(n)]
    out = []

    def grow(start, chosen):
        out.append(Subcat.of(n, chosen))
        for i in range(start, n):
            if all(ok[i][j] for j in chosen):
                grow(i + 1, chosen + [i])

    grow(0, [])
    return sorted(out, key=_subcat_key)


def perp(S: Subcat, t: HomTable) -> Subcat:
    """Right orthogonal: X with hom(s, X) = ext(s, X) = 0 for all members s."""
    n = len(t.catalog)
    keep = [x for x in range(n)
            if all(t.hom[s][x] == 0 and t.ext[s][x] == 0 for s in S.members)]
    return Subcat.of(n, keep)


# -- wide subcategories ---------------------------------------------------------

class NcLattice(FiniteLattice):
    """Wide subcategories ordered by containment."""

    def __init__(self, q: Quiver, table: HomTable, elements):
        self.quiver = q
        self.table = table
        elems = sorted(elements, key=_subcat_key)
        labels = [_label(s, table) for s in elems]
        super().__init__(elems, lambda a, b: a.issubset(b), name=f"Nc({q.name})", labels=labels)

    def subcat(self, i: int) -> Subcat:
        return self.elements[i]

    def to_json(self) -> str:
        return json.dumps({"name": self.name,
                           "elements": [[list(r) for r in s.roots(self.table)] for s in self.elements],
                           "covers": [list(c) for c in self.covers()]}, sort_keys=True)


def _label(s: Subcat, table: HomTable) -> str:
    if not s.members:
        return "0"
    return " ".join("".join(map(str, r)) for r in s.roots(table))


WIDE_LIMITS = {"A": 5, "D": 5}


def wide_routes(q: Quiver, p: int = DEFAULT_P, bound: int = DEFAULT_BOUND):
    """Wide subcategories found two ways: (semibrick route, closure route)."""
    limit = WIDE_LIMITS.get(q.dynkin_type)
    if limit is None or q.rank > limit:
        raise UnsupportedType(f"wide enumeration not supported for {q.name}",
                              count=noncrossing_count(q))
    cl = closures(q, p, bound)
    via_bricks = {cl.ext_closure(b) for b in semibricks(cl.table)}
    via_closure = set(cl.closed_sets(cl.wide_rules))
    return via_bricks, via_closure


def enumerate_wide(q: Quiver, p: int = DEFAULT_P, bound: int = DEFAULT_BOUND) -> NcLattice:
    bricks, closed = wide_routes(q, p, bound)
    if bricks != closed:
        raise RuntimeError(f"wide routes disagree for {q.name}: {len(bricks)} vs {len(closed)}")
    return NcLattice(q, hom_table(q, p), bricks)


@functools.lru_cache(maxsize=None)
def nc_lattice(q: Quiver) -> NcLattice:
    return enumerate_wide(q)


def bound_stable(q: Quiver, subsets, op: str, p: int = DEFAULT_P, bound: int = DEFAULT_BOUND) -> list:
    """Subsets whose ``op`` closure changes when the bound grows by one."""
    lo, hi = closures(q, p, bound), closures(q, p, bound + 1)
    name = f"{op}_closure"
    return [s for s in subsets if getattr(lo, name)(s) != getattr(hi, name)(s)]


def all_subcats(n: int):
    for m in range(1 << n):
        yield Subcat(n, m)
