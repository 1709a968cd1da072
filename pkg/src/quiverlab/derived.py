"""Suspended subcategories of D^b(kQ) and filtrations of wide subcategories.

Degrees are cohomological: a generator ``(root, n)`` is the module placed in
degree ``n`` (the complex M[-n]).  Since kQ is hereditary every complex is
the sum of its shifted cohomologies, so a suspended subcategory S is fixed
by its cohomology levels C_n = H^n(S), which form a non-increasing chain.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from .lattice import FiniteLattice
from .quiver import Quiver
from .reps import HomTable
from .subcat import Closures, NcLattice, Subcat, closures, nc_lattice


class WindowTooSmall(ValueError):
    pass


@dataclass(frozen=True)
class DObject:
    """A finite sum of shifted catalog modules: degree -> multiset of indices."""

    parts: tuple[tuple[int, tuple[int, ...]], ...] = ()

    @classmethod
    def of(cls, mapping) -> "DObject":
        items = sorted((int(n), tuple(sorted(ms))) for n, ms in dict(mapping).items() if ms)
        return cls(tuple(items))

    def cohomology(self, n: int) -> tuple[int, ...]:
        return dict(self.parts).get(n, ())

    def shift(self, k: int = 1) -> "DObject":
        """X[k]: the degree-n part moves to degree n - k."""
        return DObject(tuple((n - k, ms) for n, ms in self.parts))

    def is_zero(self) -> bool:
        return not self.parts


def hom_shifted(M: int, a: int, L: int, b: int, t: HomTable) -> int:
    """dim Hom(M[a], L[b]) = dim Ext^{b-a}(M, L)."""
    if b == a:
        return t.hom[M][L]
    if b == a + 1:
        return t.ext[M][L]
    return 0


def hom_degrees(M: int, a: int, L: int, b: int, t: HomTable) -> int:
    """dim Hom between M placed in degree a and L placed in degree b."""
    return hom_shifted(M, -a, L, -b, t)


# -- suspended subcategories -----------------------------------------------------

@dataclass(frozen=True)
class SuspSubcat:
    """Levels C_n: ``low`` for n < start, ``levels`` from start on, then ``high``.

    Masks are catalog bitmasks.  The representation is normalized so that
    two equal chains compare equal.
    """

    size: int
    start: int
    levels: tuple[int, ...]
    low: int
    high: int

    @classmethod
    def make(cls, size: int, start: int, levels, low: int, high: int) -> "SuspSubcat":
        lv = list(levels)
        while lv and lv[0] == low:
            lv.pop(0)
            start += 1
        while lv and lv[-1] == high:
            lv.pop()
        if not lv and low == high:
            start = 0
        return cls(size, start, tuple(lv), low, high)

    def level(self, n: int) -> Subcat:
        if n < self.start:
            return Subcat(self.size, self.low)
        if n >= self.start + len(self.levels):
            return Subcat(self.size, self.high)
        return Subcat(self.size, self.levels[n - self.start])

    def span(self) -> tuple[int, int]:
        """Degrees outside which the chain is constant."""
        return self.start, self.start + len(self.levels)

    def contains(self, X: DObject) -> bool:
        return all(set(ms) <= set(self.level(n).members) for n, ms in X.parts)

    def members(self, lo: int, hi: int) -> list[tuple[int, int]]:
        return [(r, n) for n in range(lo, hi + 1) for r in self.level(n).members]


def _level_step(cl: Closures, levels: list[int]) -> list[int]:
    """One round of the closure rules on a chain; levels[0] repeats below."""
    mf = cl.map_facts
    fx, fy, fk, fc = mf[:, 0], mf[:, 1], mf[:, 2], mf[:, 3]
    ep, ec = cl.ext_rules
    out = list(levels)
    top = len(out)
    for i in range(top - 2, -1, -1):
        out[i] |= out[i + 1]
    for i in range(top):
        below = out[i - 1] if i else out[0]
        here = out[i]
        above = out[i + 1] if i + 1 < top else 0
        # f: A in C_i -> B in C_{i+1} gives ker in C_i
        app = ((fx & ~np.int64(here)) == 0) & ((fy & ~np.int64(above)) == 0)
        if app.any():
            out[i] |= int(np.bitwise_or.reduce(fk[app]))
        # f: A in C_{i-1} -> B in C_i gives coker in C_i
        app = ((fx & ~np.int64(below)) == 0) & ((fy & ~np.int64(here)) == 0)
        if app.any():
            out[i] |= int(np.bitwise_or.reduce(fc[app]))
        app = (ep & ~np.int64(out[i])) == 0
        if app.any():
            out[i] |= int(np.bitwise_or.reduce(ec[app]))
    return out


def close_levels(cl: Closures, levels: list[int]) -> list[int]:
    cur = list(levels)
    while True:
        nxt = _level_step(cl, cur)
        if nxt == cur:
            return cur
        cur = nxt


def susp_closure(q: Quiver, gens, window: tuple[int, int], p: int = 3, bound: int = 2) -> SuspSubcat:
    """Smallest suspended subcategory containing the generators ``(root, degree)``."""
    lo, hi = window
    if hi < lo:
        raise ValueError("empty window")
    cl = closures(q, p, bound)
    n = cl.n
    gens = list(gens)
    for r, d in gens:
        if not lo <= d <= hi:
            raise WindowTooSmall(f"generator in degree {d} outside window [{lo}, {hi}]")
        if not 0 <= r < n:
            raise IndexError(f"catalog index {r} out of range")
    pad = n + 2
    base = lo - pad
    levels = [0] * (hi - base + 2)
    for r, d in gens:
        levels[d - base] |= 1 << r
    levels = close_levels(cl, levels)
    if levels[-1]:
        raise WindowTooSmall("content above the window top")
    # the padded bottom must have settled before the artificial floor
    if levels[0] != levels[1]:
        raise WindowTooSmall("chain did not stabilize below the window")
    return SuspSubcat.make(n, base, levels, levels[0], 0)


def is_suspended_chain(cl: Closures, S: SuspSubcat) -> bool:
    lo, hi = S.span()
    levels = [S.level(k).mask for k in range(lo - 2, hi + 2)]
    if levels[-1] != S.high:
        return False
    if S.high:
        levels.append(S.high)
    return close_levels(cl, levels) == levels


# -- filtrations -------------------------------------------------------------------

@dataclass(frozen=True)
class Filtration:
    """A non-increasing Z-indexed chain in a finite lattice, jump encoded.

    Value ``low`` for n below the first jump; each ``(index, element)`` sets
    the value from ``index`` on.  Elements are lattice positions.
    """

    lattice: FiniteLattice = field(compare=False, hash=False, repr=False)
    low: int
    jumps: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        prev, last_idx = self.low, None
        for idx, e in self.jumps:
            if last_idx is not None and idx <= last_idx:
                raise ValueError("jump indices must increase")
            if e == prev or not self.lattice.leq(e, prev):
                raise ValueError("filtration must strictly decrease at each jump")
            prev, last_idx = e, idx

    @property
    def high(self) -> int:
        return self.jumps[-1][1] if self.jumps else self.low

    def value(self, n: int) -> int:
        v = self.low
        for idx, e in self.jumps:
            if n >= idx:
                v = e
        return v

    @classmethod
    def from_values(cls, lattice: FiniteLattice, start: int, values, low=None) -> "Filtration":
        """Dense values on ``start, start+1, ...``; constant outside."""
        values = list(values)
        low = values[0] if low is None else low
        jumps, prev = [], low
        for k, v in enumerate(values):
            if v != prev:
                jumps.append((start + k, v))
                prev = v
        return cls(lattice, low, tuple(jumps))

    def dense(self, lo: int, hi: int) -> tuple[int, ...]:
        return tuple(self.value(n) for n in range(lo, hi + 1))

    def to_json(self) -> str:
        L = self.lattice
        return json.dumps({"lattice": L.name, "low": L.labels[self.low],
                           "jumps": [[i, L.labels[e]] for i, e in self.jumps],
                           "high": L.labels[self.high]})

    @classmethod
    def from_json(cls, text: str, lattice: FiniteLattice) -> "Filtration":
        d = json.loads(text)
        if d["lattice"] != lattice.name:
            raise ValueError(f"filtration is over {d['lattice']}, not {lattice.name}")
        pos = {lab: i for i, lab in enumerate(lattice.labels)}
        f = cls(lattice, pos[d["low"]], tuple((int(i), pos[e]) for i, e in d["jumps"]))
        if lattice.labels[f.high] != d["high"]:
            raise ValueError("high end does not match the jumps")
        return f


def enumerate_filtrations(L: FiniteLattice, w: int, start: int = 1) -> list[Filtration]:
    """All non-increasing ``w``-tuples of L, as filtrations constant outside."""
    if w < 1:
        raise ValueError("window length must be at least 1")
    n = len(L)
    out = []

    def grow(chain):
        if len(chain) == w:
            out.append(Filtration.from_values(L, start, chain))
            return
        for e in range(n):
            if not chain or L.leq(e, chain[-1]):
                grow(chain + [e])

    grow([])
    return out


def filtration_lattice(L: FiniteLattice, w: int) -> FiniteLattice:
    """Windowed filtrations of L ordered pointwise."""
    fs = enumerate_filtrations(L, w)
    tuples = [f.dense(1, w) for f in fs]
    labels = ["(" + ",".join(L.labels[e] for e in t) + ")" for t in tuples]
    return FiniteLattice(tuples, lambda a, b: all(L.leq(x, y) for x, y in zip(a, b)),
                         name=f"Filt{w}({L.name})", labels=labels)


def filt_to_susp(F: Filtration, p: int = 3, bound: int = 2) -> SuspSubcat:
    """Levels gen(W_n) and W_{n-1} intersected."""
    L = F.lattice
    if not isinstance(L, NcLattice):
        raise TypeError("filtration must be over a lattice of wide subcategories")
    cl = closures(L.quiver, p, bound)

    def level(n):
        w = L.subcat(F.value(n))
        prev = L.subcat(F.value(n - 1))
        return (cl.gen_closure(w) & prev).mask

    idx = [i for i, _ in F.jumps]
    lo = (min(idx) - 1) if idx else 0
    hi = (max(idx) + 1) if idx else 0
    low = L.subcat(F.low).mask
    high = L.subcat(F.high).mask
    return SuspSubcat.make(cl.n, lo, [level(n) for n in range(lo, hi + 1)], low, high)


def susp_to_filt(S: SuspSubcat, L: NcLattice | None = None, p: int = 3, bound: int = 2) -> Filtration:
    """Apply alpha to every level."""
    if L is None:
        raise ValueError("a lattice of wide subcategories is required")
    cl = closures(L.quiver, p, bound)
    pos = {s: i for i, s in enumerate(L.elements)}

    def a(mask):
        w = cl.alpha(Subcat(cl.n, mask))
        return pos[w]

    lo, hi = S.span()
    values = [a(S.level(n).mask) for n in range(lo, hi + 1)]
    return Filtration.from_values(L, lo, values, low=a(S.low))


def aisle_perp(F: Filtration, window: tuple[int, int], p: int = 3, bound: int = 2) -> set:
    """Pairs (root, degree) in the window with no maps from the aisle of F."""
    L = F.lattice
    S = filt_to_susp(F, p, bound)
    t = L.table
    lo, hi = window
    out = set()
    for b in range(lo, hi + 1):
        for r in range(len(t.catalog)):
            # only degrees b and b+1 of the aisle can map to L in degree b
            if all(hom_degrees(m, a, r, b, t) == 0
                   for a in (b, b + 1) for m in S.level(a).members):
                out.add((r, b))
    return out


def standard_aisle(q: Quiver) -> Filtration:
    L = nc_lattice(q)
    return Filtration(L, L.top, ((1, L.bottom),))
