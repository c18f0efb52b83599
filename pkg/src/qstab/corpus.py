"""Bundled graph6 corpus: every graph of order 1..8 up to isomorphism."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from typing import Iterator

from .graph import Graph
from .io import from_graph6

MAX_ORDER = 8


@lru_cache(maxsize=None)
def _load(n: int) -> tuple[Graph, ...]:
    if not 1 <= n <= MAX_ORDER:
        raise ValueError(f"corpus covers orders 1..{MAX_ORDER}, not {n}")
    text = resources.files("qstab.data").joinpath(f"graphs{n}.g6").read_text()
    return tuple(from_graph6(line) for line in text.split())


def graphs(n: int, connected: bool = False) -> list[Graph]:
    out = _load(n)
    if connected:
        return [g for g in out if g.is_connected()]
    return list(out)


def graphs_upto(n: int, connected: bool = False, min_order: int = 1) -> Iterator[Graph]:
    for k in range(min_order, n + 1):
        yield from graphs(k, connected)
