"""Parametric families and the labelled fixtures used throughout the tests.

Fixtures run a few structural self-checks when first built so that a
transcription slip in an edge list fails loudly instead of silently
changing downstream numbers.
"""

from __future__ import annotations

import re
from functools import lru_cache
from itertools import combinations

from .errors import GraphError
from .graph import Graph, mask_of

PETERSEN_EDGES = [
    (1, 5), (1, 7), (1, 9), (2, 5), (2, 8), (2, 10), (3, 6), (3, 7),
    (3, 10), (4, 6), (4, 8), (4, 9), (5, 6), (7, 8), (9, 10),
]
FIG2_EDGES = "ja ai ib bj ji dg ef eg df gf bc cd hc he ha".split()
EXAMPLE7_EDGES = "ab bc cd de ef fa gb gc ge gf".split()


def complete(n: int) -> Graph:
    return Graph(n, frozenset(combinations(range(n), 2)))


def empty(n: int) -> Graph:
    return Graph(n, frozenset())


def complete_bipartite(p: int, q: int) -> Graph:
    return Graph(p + q, frozenset((i, p + j) for i in range(p) for j in range(q)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("a path needs at least 1 vertex")
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def star(k: int) -> Graph:
    """``K_{1,k}`` with the centre at vertex 0."""
    return Graph(k + 1, frozenset((0, i) for i in range(1, k + 1)))


def _lettered(pairs: list[str], names: str) -> Graph:
    pos = {c: i for i, c in enumerate(names)}
    return Graph(len(names), frozenset((pos[p[0]], pos[p[1]]) for p in pairs), tuple(names))


def _is_kt(g: Graph, names: str | list, kappa: int, tau: int) -> bool:
    s = mask_of(g.vertex_set(names))
    return all(
        (g.adj[v] & s).bit_count() == (kappa if s >> v & 1 else tau) for v in range(g.n)
    )


def _self_check(ok: bool, what: str):
    if not ok:
        raise AssertionError(f"fixture self-check failed: {what}")


@lru_cache(maxsize=None)
def petersen() -> Graph:
    g = Graph(10, frozenset((u - 1, v - 1) for u, v in PETERSEN_EDGES), tuple(str(i) for i in range(1, 11)))
    _self_check(g.m == 15 and set(g.degrees()) == {3}, "petersen is 3-regular with 15 edges")
    _self_check(g.girth() == 5, "petersen has girth 5")
    _self_check(_is_kt(g, ["1", "2", "3", "4"], 0, 2), "S1 is (0,2)-regular")
    _self_check(_is_kt(g, [str(i) for i in range(5, 11)], 1, 3), "S2 is (1,3)-regular")
    _self_check(_is_kt(g, ["1", "2", "5", "7", "8"], 2, 1), "S3 is (2,1)-regular")
    return g


@lru_cache(maxsize=None)
def fig2() -> Graph:
    g = _lettered(FIG2_EDGES, "abcdefghij")
    _self_check(g.m == 15 and set(g.degrees()) == {3}, "fig2 is 3-regular of order 10")
    _self_check(_is_kt(g, list("abde"), 0, 2), "{a,b,d,e} is (0,2)-regular")
    return g


@lru_cache(maxsize=None)
def example7() -> Graph:
    """Hexagon a..f with a centre g joined to b, c, e, f."""
    g = _lettered(EXAMPLE7_EDGES, "abcdefg")
    _self_check(g.m == 10 and g.degrees() == [2, 3, 3, 2, 3, 3, 4], "example7 degrees")
    _self_check(_is_kt(g, list("bdf"), 0, 2) and _is_kt(g, list("ace"), 0, 2), "example7 regular sets")
    from .spectra import integer_eigen_check

    mults = {k: integer_eigen_check(g, k).multiplicity for k in (3, 1, 0, -1, -2)}
    _self_check(mults == {3: 1, 1: 2, 0: 1, -1: 1, -2: 2}, "example7 spectrum {3,1,1,0,-1,-2,-2}")
    return g


FAMILIES = {
    "complete": complete,
    "empty": empty,
    "complete_bipartite": complete_bipartite,
    "cycle": cycle,
    "path": path,
    "star": star,
    "petersen": petersen,
    "fig2": fig2,
    "example7": example7,
}

_SHORT = [
    (re.compile(r"k(\d+)[,x_](\d+)$"), "complete_bipartite"),
    (re.compile(r"k(\d+)$"), "complete"),
    (re.compile(r"e(\d+)$"), "empty"),
    (re.compile(r"c(\d+)$"), "cycle"),
    (re.compile(r"p(\d+)$"), "path"),
    (re.compile(r"star(\d+)$"), "star"),
]


def named(family: str, *params: int) -> Graph:
    """Look up a family by tag, e.g. ``named("cycle", 5)`` or ``named("c5")``."""
    tag = family.lower().strip()
    if tag in FAMILIES:
        try:
            return FAMILIES[tag](*params)
        except TypeError:
            raise GraphError(f"bad parameters {params} for family {tag!r}") from None
    if not params:
        for pattern, name in _SHORT:
            hit = pattern.match(tag)
            if hit:
                return FAMILIES[name](*(int(x) for x in hit.groups()))
    raise GraphError(f"unknown graph family {family!r}")
