#!/usr/bin/env python3
"""Regenerate src/qstab/data/graphs{n}.g6: all graphs of order n up to isomorphism.

Orders <= 7 come from the networkx graph atlas. Order 8 is built by adding a
vertex to every order-7 graph in all 2^7 ways and de-duplicating with a
Weisfeiler-Lehman bucket followed by VF2 isomorphism tests.
Requires networkx (dev-only dependency).
"""

import sys
from collections import defaultdict
from pathlib import Path

import networkx as nx

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from qstab.graph import Graph  # noqa: E402
from qstab.io import to_graph6  # noqa: E402

DATA = Path(__file__).resolve().parents[1] / "src" / "qstab" / "data"
KNOWN = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346}


def to_qstab(h: nx.Graph) -> Graph:
    idx = {v: i for i, v in enumerate(sorted(h.nodes))}
    return Graph(len(idx), frozenset((idx[u], idx[v]) for u, v in h.edges))


def extend(prev: list[nx.Graph], n: int) -> list[nx.Graph]:
    buckets: dict[tuple, list[nx.Graph]] = defaultdict(list)
    for h in prev:
        for mask in range(1 << (n - 1)):
            g = h.copy()
            g.add_node(n - 1)
            g.add_edges_from((n - 1, i) for i in range(n - 1) if mask >> i & 1)
            key = (
                g.number_of_edges(),
                tuple(sorted(d for _, d in g.degree)),
                nx.weisfeiler_lehman_graph_hash(g, iterations=3),
            )
            bucket = buckets[key]
            if not any(nx.is_isomorphic(g, o) for o in bucket):
                bucket.append(g)
    return [g for b in buckets.values() for g in b]


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    by_order: dict[int, list[nx.Graph]] = defaultdict(list)
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() >= 1:
            by_order[h.number_of_nodes()].append(h)
    by_order[8] = extend(by_order[7], 8)
    for n in range(1, 9):
        graphs = sorted((to_qstab(h) for h in by_order[n]), key=lambda g: (g.m, to_graph6(g)))
        assert len(graphs) == KNOWN[n], (n, len(graphs))
        (DATA / f"graphs{n}.g6").write_text("".join(to_graph6(g) + "\n" for g in graphs))
        print(n, len(graphs))


if __name__ == "__main__":
    main()
