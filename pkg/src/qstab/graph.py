"""Immutable simple undirected graphs with bitset adjacency."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import GraphError


def _norm_edges(n: int, edges: Iterable[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    out = set()
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge {(u, v)} has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop {(u, v)} is not allowed")
        out.add((u, v) if u < v else (v, u))
    return frozenset(out)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``labels`` are display names only; equality and hashing use ``n`` and
    ``edges``. ``origin`` maps each vertex back to the vertex index of the
    root graph it was cut from (``None`` for root graphs).
    """

    n: int
    edges: frozenset[tuple[int, int]]
    labels: tuple[str, ...] | None = field(default=None, compare=False)
    origin: tuple[int, ...] | None = field(default=None, compare=False, repr=False)
    adj: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("vertex count must be nonnegative")
        edges = _norm_edges(self.n, self.edges)
        object.__setattr__(self, "edges", edges)
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != self.n:
                raise GraphError(f"expected {self.n} labels, got {len(labels)}")
            if len(set(labels)) != self.n:
                raise GraphError("vertex labels must be unique")
            object.__setattr__(self, "labels", labels)
        if self.origin is not None and len(self.origin) != self.n:
            raise GraphError("origin map has the wrong length")
        adj = [0] * self.n
        for u, v in edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        object.__setattr__(self, "adj", tuple(adj))

    # -- basic queries -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def index(self, name) -> int:
        """Vertex index for a label (or an index given as int/str)."""
        if self.labels is not None and str(name) in self.labels:
            return self.labels.index(str(name))
        try:
            v = int(name)
        except (TypeError, ValueError):
            raise GraphError(f"unknown vertex {name!r}") from None
        if not 0 <= v < self.n:
            raise GraphError(f"unknown vertex {name!r}")
        return v

    def vertex_set(self, names: Iterable) -> frozenset[int]:
        return frozenset(self.index(x) for x in names)

    def names(self, vertices: Iterable[int]) -> list[str]:
        return [self.label(v) for v in sorted(vertices)]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        a = self.adj[v]
        return [w for w in range(self.n) if a >> w & 1]

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adj]

    @property
    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    @property
    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def is_regular(self) -> bool:
        return len(set(self.degrees())) <= 1

    def isolated_vertices(self) -> list[int]:
        return [v for v in range(self.n) if self.adj[v] == 0]

    def is_stable(self, vertices: Iterable[int]) -> bool:
        mask = 0
        for v in vertices:
            mask |= 1 << v
        return all(not (self.adj[v] & mask) for v in _bits(mask))

    def adjacency_matrix(self, dtype=np.float64) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=dtype)
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1
        return a

    def adjacency_rows(self) -> list[list[int]]:
        return [[(a >> j) & 1 for j in range(self.n)] for a in self.adj]

    def components(self) -> list[list[int]]:
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = 1 << s
            frontier = comp
            while frontier:
                nxt = 0
                for v in _bits(frontier):
                    nxt |= self.adj[v]
                frontier = nxt & ~comp
                comp |= nxt
            seen |= comp
            comps.append(list(_bits(comp)))
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def is_bipartite(self) -> bool:
        color = [-1] * self.n
        for s in range(self.n):
            if color[s] >= 0:
                continue
            color[s] = 0
            stack = [s]
            while stack:
                v = stack.pop()
                for w in self.neighbors(v):
                    if color[w] < 0:
                        color[w] = 1 - color[v]
                        stack.append(w)
                    elif color[w] == color[v]:
                        return False
        return True

    def girth(self) -> float:
        """Length of a shortest cycle (``inf`` for forests)."""
        best = float("inf")
        for s in range(self.n):
            dist = {s: 0}
            parent = {s: -1}
            queue = [s]
            for v in queue:
                for w in self.neighbors(v):
                    if w not in dist:
                        dist[w] = dist[v] + 1
                        parent[w] = v
                        queue.append(w)
                    elif parent[v] != w:
                        best = min(best, dist[v] + dist[w] + 1)
        return best

    # -- constructions -------------------------------------------------

    def induced(self, keep: Iterable[int]) -> Graph:
        """Induced subgraph on ``keep`` (kept in increasing index order)."""
        keep = sorted(set(keep))
        for v in keep:
            if not 0 <= v < self.n:
                raise GraphError(f"unknown vertex {v}")
        pos = {v: i for i, v in enumerate(keep)}
        edges = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        labels = tuple(self.label(v) for v in keep)
        base = self.origin
        origin = tuple(base[v] if base is not None else v for v in keep)
        return Graph(len(keep), edges, labels, origin)

    def delete_vertices(self, removed: Iterable[int]) -> Graph:
        """``G - U``: labels and the origin map refer back to the parent."""
        removed = set(removed)
        for v in removed:
            if not 0 <= v < self.n:
                raise GraphError(f"unknown vertex {v}")
        return self.induced(v for v in range(self.n) if v not in removed)

    def complement(self) -> Graph:
        edges = [(u, v) for u, v in combinations(range(self.n), 2) if not self.has_edge(u, v)]
        return Graph(self.n, edges, self.labels)

    def line_graph(self) -> Graph:
        if self.m == 0:
            raise GraphError("line graph needs at least one edge")
        elist = sorted(self.edges)
        edges = [
            (i, j)
            for (i, e), (j, f) in combinations(enumerate(elist), 2)
            if set(e) & set(f)
        ]
        labels = tuple(f"{self.label(u)}-{self.label(v)}" for u, v in elist)
        return Graph(len(elist), edges, labels)

    def relabeled(self, labels: Sequence[str] | None) -> Graph:
        return Graph(self.n, self.edges, None if labels is None else tuple(labels), self.origin)

    def root_vertices(self, vertices: Iterable[int]) -> list[int]:
        """Translate vertex indices of this graph to root-graph indices."""
        if self.origin is None:
            return sorted(vertices)
        return sorted(self.origin[v] for v in vertices)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def from_edge_list(n: int, edges: Iterable[tuple[int, int]], labels=None) -> Graph:
    """Build a graph, dropping duplicate pairs; bad endpoints raise ``GraphError``."""
    return Graph(n, frozenset(_norm_edges(n, edges)), labels)


def bits(mask: int) -> list[int]:
    return list(_bits(mask))
