"""Finite lattices given by an explicit order relation."""

from __future__ import annotations

import json

import numpy as np


class NotALattice(ValueError):
    pass


class FiniteLattice:
    """A finite lattice on ``elements`` ordered by ``leq(a, b)``.

    Elements can be any hashable values; internally they are addressed by
    position.  Joins and meets are precomputed, so construction fails with
    :class:`NotALattice` when some pair has no least upper bound.
    """

    def __init__(self, elements, leq, name: str = "", labels=None):
        self.elements = list(elements)
        self.name = name
        n = len(self.elements)
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        self.order = np.array([[bool(leq(a, b)) for b in self.elements] for a in self.elements],
                              dtype=bool).reshape(n, n)
        self._index = {e: i for i, e in enumerate(self.elements)}
        self.join_table = self._bound_table(self.order)
        self.meet_table = self._bound_table(self.order.T)

    def _bound_table(self, order: np.ndarray) -> np.ndarray:
        n = len(self.elements)
        table = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(i, n):
                ups = np.nonzero(order[i] & order[j])[0]
                least = [u for u in ups if order[u, ups].all()]
                if len(least) != 1:
                    raise NotALattice(f"{self.labels[i]} and {self.labels[j]} have no unique bound")
                table[i, j] = table[j, i] = least[0]
        return table

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, e) -> int:
        return self._index[e]

    def leq(self, i: int, j: int) -> bool:
        return bool(self.order[i, j])

    def join(self, i: int, j: int) -> int:
        return int(self.join_table[i, j])

    def meet(self, i: int, j: int) -> int:
        return int(self.meet_table[i, j])

    def join_all(self, idxs) -> int:
        out = self.bottom
        for i in idxs:
            out = self.join(out, i)
        return out

    @property
    def bottom(self) -> int:
        return int(np.nonzero(self.order.all(axis=1))[0][0])

    @property
    def top(self) -> int:
        return int(np.nonzero(self.order.all(axis=0))[0][0])

    def covers(self) -> list[tuple[int, int]]:
        """Pairs ``(i, j)`` with ``i < j`` and nothing strictly between."""
        n = len(self.elements)
        lt = self.order & ~np.eye(n, dtype=bool)
        out = []
        for i in range(n):
            for j in np.nonzero(lt[i])[0]:
                if not (lt[i] & lt[:, j]).any():
                    out.append((i, int(j)))
        return out

    def to_json(self) -> str:
        return json.dumps({"name": self.name, "elements": self.labels,
                           "covers": [list(c) for c in self.covers()]}, sort_keys=True)

    def to_dot(self) -> str:
        lines = [f'digraph "{self.name or "lattice"}" {{', "  rankdir=BT;"]
        for i, lab in enumerate(self.labels):
            lines.append(f'  n{i} [label="{lab}"];')
        for i, j in self.covers():
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"
