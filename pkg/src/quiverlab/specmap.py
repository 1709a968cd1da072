"""Finite models of Spec(R) and monotone maps into lattices of subcategories."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

import numpy as np

from .derived import Filtration, aisle_perp, filt_to_susp
from .lattice import FiniteLattice
from .subcat import NcLattice, Subcat, perp


class NotMonotone(ValueError):
    pass


class FinitePoset:
    """A poset given by labels and cover pairs ``(lower, upper)``."""

    def __init__(self, labels, covers, name: str = ""):
        self.labels = list(labels)
        self.name = name
        n = len(self.labels)
        self.cover_pairs = [tuple(c) for c in covers]
        le = np.eye(n, dtype=bool)
        for a, b in self.cover_pairs:
            le[a, b] = True
        for k in range(n):
            le |= le[:, [k]] & le[[k], :]
        if (le & le.T & ~np.eye(n, dtype=bool)).any():
            raise ValueError("cover relation has a cycle")
        self.order = le

    def __len__(self) -> int:
        return len(self.labels)

    def leq(self, a: int, b: int) -> bool:
        return bool(self.order[a, b])

    def down(self, a: int) -> list[int]:
        return [b for b in range(len(self)) if self.order[b, a]]

    def linear_extension(self) -> list[int]:
        return sorted(range(len(self)), key=lambda a: (int(self.order[:, a].sum()), a))

    def to_json(self) -> str:
        return json.dumps({"name": self.name, "elements": self.labels,
                           "covers": [list(c) for c in self.cover_pairs]})

    @classmethod
    def from_json(cls, text: str) -> "FinitePoset":
        d = json.loads(text)
        return cls(d["elements"], [tuple(c) for c in d.get("covers", [])], d.get("name", ""))


def point() -> FinitePoset:
    return FinitePoset(["(0)"], [], "point")


def chain(k: int) -> FinitePoset:
    """Primes (0) < (x) for k = 2, as in Spec of a DVR; longer chains generic."""
    if k < 1:
        raise ValueError("chain length must be positive")
    labels = ["(0)", "(x)"] if k == 2 else [f"p{i}" for i in range(k)]
    if k == 1:
        labels = ["(0)"]
    return FinitePoset(labels, [(i, i + 1) for i in range(k - 1)], f"chain({k})")


def fan(k: int) -> FinitePoset:
    """A generic point below ``k`` closed points."""
    labels = ["(0)"] + [f"m{i}" for i in range(1, k + 1)]
    return FinitePoset(labels, [(0, i) for i in range(1, k + 1)], f"fan({k})")


def antichain(k: int) -> FinitePoset:
    return FinitePoset([f"q{i}" for i in range(k)], [], f"antichain({k})")


_BUILTINS = {"point": lambda k: point(), "chain": chain, "fan": fan, "antichain": antichain}


def make_poset(spec) -> FinitePoset:
    """Builtin tag (``point``, ``chain2``, ``chain(3)``, ``fan3``, ``antichain2``)
    or a JSON cover list ``{"elements": [...], "covers": [[lo, hi], ...]}``."""
    if isinstance(spec, FinitePoset):
        return spec
    if isinstance(spec, dict):
        return FinitePoset.from_json(json.dumps(spec))
    text = str(spec).strip()
    if text.startswith("{"):
        return FinitePoset.from_json(text)
    m = re.fullmatch(r"([a-z]+)\(?(\d*)\)?", text)
    if not m or m.group(1) not in _BUILTINS:
        raise ValueError(f"unknown poset {spec!r}")
    k = int(m.group(2)) if m.group(2) else 1
    return _BUILTINS[m.group(1)](k)


@dataclass(frozen=True)
class MonotoneMap:
    domain: FinitePoset = field(compare=False, hash=False, repr=False)
    codomain: FiniteLattice = field(compare=False, hash=False, repr=False)
    values: tuple[int, ...]
    note: str = field(default="", compare=False)

    def __post_init__(self):
        P, L = self.domain, self.codomain
        if len(self.values) != len(P):
            raise ValueError("one value per domain element is required")
        for a in range(len(P)):
            for b in range(len(P)):
                if P.leq(a, b) and not L.leq(self.values[a], self.values[b]):
                    raise NotMonotone(f"{P.labels[a]} <= {P.labels[b]} but values are not ordered")

    def __le__(self, other: "MonotoneMap") -> bool:
        return all(self.codomain.leq(a, b) for a, b in zip(self.values, other.values))

    def to_json(self) -> dict:
        return {P: self.codomain.labels[v] for P, v in zip(self.domain.labels, self.values)}


def monotone_maps(P: FinitePoset, L: FiniteLattice) -> list[MonotoneMap]:
    """Every order-preserving map, by backtracking along a linear extension."""
    order = P.linear_extension()
    n = len(L)
    out = []
    vals = [None] * len(P)

    def grow(k):
        if k == len(order):
            out.append(tuple(vals))
            return
        a = order[k]
        lower = [vals[b] for b in order[:k] if P.leq(b, a)]
        upper = [vals[b] for b in order[:k] if P.leq(a, b)]
        for e in range(n):
            if all(L.leq(v, e) for v in lower) and all(L.leq(e, v) for v in upper):
                vals[a] = e
                grow(k + 1)
        vals[a] = None

    grow(0)
    return [MonotoneMap(P, L, v) for v in sorted(out)]


def map_lattice(maps: list[MonotoneMap]) -> FiniteLattice:
    """The maps ordered pointwise."""
    labels = [m.note or ",".join(m.codomain.labels[v] for v in m.values) for m in maps]
    return FiniteLattice(maps, lambda a, b: a <= b, name="maps", labels=labels)


def phi_psi_roundtrip(s: MonotoneMap) -> bool:
    """The join of s over each down-set returns s."""
    P, L = s.domain, s.codomain
    return all(L.join_all(s.values[b] for b in P.down(a)) == s.values[a] for a in range(len(P)))


def _nc(L: FiniteLattice) -> NcLattice:
    if not isinstance(L, NcLattice):
        raise TypeError("codomain must be a lattice of wide subcategories")
    return L


def glue_generators(s: MonotoneMap, window: tuple[int, int] = (0, 0)) -> set:
    """Symbolic generators (prime label, root, shift) of the glued subcategory.

    For a codomain of wide subcategories every member contributes in shift 0.
    For filtration codomains (values are Filtration objects) the members of
    each degree of the associated aisle inside ``window`` are listed.
    """
    out = set()
    P, L = s.domain, s.codomain
    for a, v in enumerate(s.values):
        elem = L.elements[v]
        if isinstance(elem, Filtration):
            S = filt_to_susp(elem)
            t = elem.lattice.table
            for r, n in S.members(*window):
                out.add((P.labels[a], t.catalog[r], n))
        else:
            nc = _nc(L)
            for r in nc.subcat(v).members:
                out.add((P.labels[a], nc.table.catalog[r], 0))
    return out


def coaisle_values(s: MonotoneMap, window: tuple[int, int] = (0, 0)) -> list:
    """Per prime, the right perpendicular of s at that prime."""
    P, L = s.domain, s.codomain
    out = []
    for v in s.values:
        elem = L.elements[v]
        if isinstance(elem, Filtration):
            out.append(frozenset(aisle_perp(elem, window)))
        else:
            nc = _nc(L)
            out.append(perp(nc.subcat(v), nc.table))
    return out


def filt_codomain(L: NcLattice, w: int) -> FiniteLattice:
    """Windowed filtrations of L as lattice elements (Filtration objects)."""
    from .derived import enumerate_filtrations
    fs = enumerate_filtrations(L, w)
    labels = [json.dumps([L.labels[e] for e in f.dense(1, w)]) for f in fs]
    return FiniteLattice(fs, lambda a, b: all(L.leq(x, y) for x, y in zip(a.dense(1, w), b.dense(1, w))),
                         name=f"Filt{w}({L.name})", labels=labels)


# Labels of the C[[x]]A2 example: (value at (0), value at (x)) -> node name,
# values written as sorted dimension vectors of the wide subcategory.
EXAMPLE_LABELS = {
    ((), ()): "0 -> 0",
    ((), ((0, 1),)): "0 -> T",
    ((), ((1, 0),)): "T -> 0",
    ((), ((1, 1),)): "T ~ T'",
    ((), ((0, 1), (1, 0), (1, 1))): "T -> T'",
    (((0, 1),), ((0, 1),)): "0 -> M",
    (((1, 0),), ((1, 0),)): "M -> 0",
    (((1, 1),), ((1, 1),)): "M ~ M'",
    (((0, 1),), ((0, 1), (1, 0), (1, 1))): "T -> M",
    (((1, 0),), ((0, 1), (1, 0), (1, 1))): "M -> T",
    (((1, 1),), ((0, 1), (1, 0), (1, 1))): "M -f_tor-> M'",
    (((0, 1), (1, 0), (1, 1)), ((0, 1), (1, 0), (1, 1))): "M -> M'",
}


def example_maps(L: NcLattice) -> list[MonotoneMap]:
    """monotone_maps(chain(2), Nc(A2)) with the example's node names attached."""
    P = chain(2)
    out = []
    for m in monotone_maps(P, L):
        key = tuple(tuple(L.subcat(v).roots(L.table)) for v in m.values)
        out.append(MonotoneMap(P, L, m.values, EXAMPLE_LABELS.get(key, "")))
    return out
