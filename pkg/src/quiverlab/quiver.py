"""Dynkin quivers, positive roots and the Euler form."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np


class IllegalType(ValueError):
    pass


# Root enumeration bound: 6 is the largest coefficient of the E8 highest root.
ROOT_BOUND = 6


def diagram_edges(dynkin_type: str, rank: int) -> list[tuple[int, int]]:
    """Undirected edges of the Dynkin diagram, in canonical order.

    Vertices are 1..rank.  A_n is the path 1-2-...-n.  For D and E the
    trivalent vertex is numbered last; the longest arm comes first, listed
    from its far end, then the remaining arms.
    """
    t = dynkin_type.upper()
    n = rank
    if t == "A" and n >= 1:
        return [(i, i + 1) for i in range(1, n)]
    if t == "D" and n >= 4:
        c = n
        arm = [(i, i + 1) for i in range(1, n - 3)]
        return arm + [(n - 3, c), (n - 2, c), (n - 1, c)]
    if t == "E" and n in (6, 7, 8):
        c = n
        long = n - 4
        arm = [(i, i + 1) for i in range(1, long)]
        return arm + [(long, c), (long + 1, long + 2), (long + 2, c), (n - 1, c)]
    raise IllegalType(f"no Dynkin diagram of type {dynkin_type}{rank}")


@dataclass(frozen=True)
class Quiver:
    dynkin_type: str
    rank: int
    arrows: tuple[tuple[int, int], ...]

    def __post_init__(self):
        edges = diagram_edges(self.dynkin_type, self.rank)
        if len(self.arrows) != len(edges):
            raise IllegalType("arrow count does not match the diagram")
        if any(s == t for s, t in self.arrows):
            raise IllegalType("loops are not allowed")
        undirected = sorted(tuple(sorted(a)) for a in self.arrows)
        if len(set(undirected)) != len(undirected) or undirected != sorted(edges):
            raise IllegalType("arrows do not orient the named Dynkin diagram")

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(range(1, self.rank + 1))

    @property
    def name(self) -> str:
        return f"{self.dynkin_type}{self.rank}"

    @property
    def orientation(self) -> str:
        """'+'/'-' per canonical diagram edge."""
        out = []
        aset = set(self.arrows)
        for i, j in diagram_edges(self.dynkin_type, self.rank):
            out.append("+" if (i, j) in aset else "-")
        return "".join(out)

    def sinks(self) -> list[int]:
        srcs = {s for s, _ in self.arrows}
        return [v for v in self.vertices if v not in srcs]

    def sources(self) -> list[int]:
        tgts = {t for _, t in self.arrows}
        return [v for v in self.vertices if v not in tgts]

    def reflect(self, k: int) -> "Quiver":
        """Reverse every arrow incident to ``k``."""
        arrows = tuple((t, s) if k in (s, t) else (s, t) for s, t in self.arrows)
        return Quiver(self.dynkin_type, self.rank, arrows)

    def to_json(self) -> str:
        return json.dumps({"type": self.dynkin_type, "rank": self.rank,
                           "arrows": [list(a) for a in self.arrows]})

    @classmethod
    def from_json(cls, text: str) -> "Quiver":
        d = json.loads(text)
        return cls(d["type"], int(d["rank"]), tuple(tuple(a) for a in d["arrows"]))


def make_dynkin(dynkin_type: str, rank: int, orientation=None) -> Quiver:
    """Build an oriented Dynkin quiver.

    ``orientation`` gives one choice per canonical diagram edge: ``'+'``/True
    keeps ``i -> j`` (i < j), ``'-'``/False reverses it.  Omitted means all
    ``'+'``, the linear left-to-right orientation.
    """
    edges = diagram_edges(dynkin_type, rank)
    if orientation is None:
        orientation = "+" * len(edges)
    choices = list(orientation)
    if len(choices) != len(edges):
        raise ValueError(f"orientation has {len(choices)} entries, diagram has {len(edges)} edges")
    arrows = []
    for (i, j), c in zip(edges, choices):
        if c in ("+", True, 1, "1", "→"):
            arrows.append((i, j))
        elif c in ("-", False, 0, "0", "←"):
            arrows.append((j, i))
        else:
            raise ValueError(f"bad orientation entry {c!r}")
    return Quiver(dynkin_type.upper(), rank, tuple(arrows))


def parse_type(text: str) -> tuple[str, int]:
    """'D4' -> ('D', 4)."""
    text = text.strip().upper()
    if len(text) < 2 or not text[1:].isdigit():
        raise IllegalType(f"cannot parse Dynkin type {text!r}")
    return text[0], int(text[1:])


def euler_form(q: Quiver, d, e) -> int:
    """<d, e> = sum_i d_i e_i - sum_{a: i -> j} d_i e_j."""
    if len(d) != q.rank or len(e) != q.rank:
        raise ValueError("dimension vectors do not match the vertex count")
    val = sum(int(x) * int(y) for x, y in zip(d, e))
    for s, t in q.arrows:
        val -= int(d[s - 1]) * int(e[t - 1])
    return val


def tits_form(q: Quiver, d) -> int:
    return euler_form(q, d, d)


def _sort_key(d):
    return (sum(d), tuple(d))


def positive_roots(q: Quiver) -> list[tuple[int, ...]]:
    """All positive roots, sorted by total dimension then entries.

    Bounded brute force: every ``0 <= d_i <= 6`` with Tits form 1.
    """
    n = q.rank
    grids = np.indices((ROOT_BOUND + 1,) * n, dtype=np.int16).reshape(n, -1)
    val = (grids.astype(np.int32) ** 2).sum(axis=0)
    for s, t in diagram_edges(q.dynkin_type, q.rank):
        val -= grids[s - 1].astype(np.int32) * grids[t - 1]
    hits = grids[:, val == 1].T
    roots = [tuple(int(x) for x in row) for row in hits]
    return sorted(roots, key=_sort_key)


def root_count_formula(dynkin_type: str, rank: int) -> int:
    t, n = dynkin_type.upper(), rank
    diagram_edges(t, n)
    if t == "A":
        return n * (n + 1) // 2
    if t == "D":
        return n * (n - 1)
    return {6: 36, 7: 63, 8: 120}[n]


def exponents(q: Quiver) -> list[int]:
    """Exponents of the Weyl group from the heights of the positive roots.

    The number of roots of height k, read as a partition, is dual to the
    partition given by the exponents.
    """
    heights = [sum(r) for r in positive_roots(q)]
    top = max(heights)
    counts = [sum(1 for h in heights if h == k) for k in range(1, top + 1)]
    return sorted(sum(1 for c in counts if c >= j) for j in range(1, counts[0] + 1))


def coxeter_number(q: Quiver) -> int:
    return max(sum(r) for r in positive_roots(q)) + 1


def noncrossing_count(q: Quiver) -> int:
    """prod (h + d_i) / d_i over the degrees d_i = exponents + 1."""
    h = coxeter_number(q)
    val = Fraction(1)
    for m in exponents(q):
        d = m + 1
        val *= Fraction(h + d, d)
    assert val.denominator == 1
    return int(val)


def all_dynkin_orientations(dynkin_type: str, rank: int):
    edges = diagram_edges(dynkin_type, rank)
    for bits in itertools.product("+-", repeat=len(edges)):
        yield make_dynkin(dynkin_type, rank, "".join(bits))
