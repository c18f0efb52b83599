"""Brute-force combinatorics at desk scale; the ground truth for the tests."""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CapExceeded
from .graph import Graph, bits, mask_of

STABLE_CAP = 40
REGULAR_CAP = 30
MATCHING_CAP = 24
_VECTOR_CAP = 16


def cap(default: int) -> int:
    """Size cap, overridable through ``QSTAB_ORACLE_CAP``."""
    env = os.environ.get("QSTAB_ORACLE_CAP")
    return int(env) if env else default


def _check_cap(g: Graph, limit: int, what: str):
    if g.n > cap(limit):
        raise CapExceeded(f"{what} is capped at n <= {cap(limit)} (got n={g.n})")


@dataclass(frozen=True)
class StableSetResult:
    alpha: int
    witness: frozenset[int]
    all_maximum: tuple[frozenset[int], ...] | None = None


@dataclass(frozen=True)
class KtRegularCertificate:
    kappa: int
    tau: int
    set: frozenset[int]


class _StableSearch:
    """Branch and bound; a greedy clique cover of the candidates bounds how
    many more vertices a stable set can take."""

    def __init__(self, g: Graph, collect_all: bool):
        order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
        self.order = order
        pos = {v: i for i, v in enumerate(order)}
        self.adj = [0] * g.n
        for v in range(g.n):
            for w in g.neighbors(v):
                self.adj[pos[v]] |= 1 << pos[w]
        self.collect_all = collect_all
        self.best = 0
        self.best_sets: list[int] = []
        self.current = 0

    def _cover(self, p: int):
        verts, colors = [], []
        color = 0
        left = p
        while left:
            color += 1
            q = left
            while q:
                low = q & -q
                v = low.bit_length() - 1
                left &= ~low
                q &= self.adj[v] & ~low
                verts.append(v)
                colors.append(color)
        return verts, colors

    def expand(self, p: int, size: int):
        verts, colors = self._cover(p)
        for i in range(len(verts) - 1, -1, -1):
            bound = size + colors[i]
            if bound < self.best or (bound == self.best and not self.collect_all):
                return
            v = verts[i]
            self.current |= 1 << v
            rest = p & ~self.adj[v] & ~(1 << v)
            if rest:
                self.expand(rest, size + 1)
            else:
                self._record(size + 1)
            self.current &= ~(1 << v)
            p &= ~(1 << v)

    def _record(self, size: int):
        if size > self.best:
            self.best = size
            self.best_sets = [self.current]
        elif size == self.best and self.collect_all:
            self.best_sets.append(self.current)

    def run(self) -> StableSetResult:
        n = len(self.order)
        if n == 0:
            return StableSetResult(0, frozenset(), (frozenset(),) if self.collect_all else None)
        self.expand((1 << n) - 1, 0)
        sets = [frozenset(self.order[i] for i in bits(m)) for m in self.best_sets]
        sets.sort(key=sorted)
        return StableSetResult(self.best, sets[0], tuple(sets) if self.collect_all else None)


def max_stable_set(g: Graph, all_maximum: bool = False) -> StableSetResult:
    _check_cap(g, STABLE_CAP, "maximum stable set search")
    return _StableSearch(g, all_maximum).run()


def alpha(g: Graph) -> int:
    return max_stable_set(g).alpha


def clique_number(g: Graph) -> int:
    return max_stable_set(g.complement()).alpha


def verify_kt_regular(g: Graph, s, kappa: int, tau: int) -> bool:
    mask = mask_of(s)
    return all(
        (g.adj[v] & mask).bit_count() == (kappa if mask >> v & 1 else tau) for v in range(g.n)
    )


@lru_cache(maxsize=None)
def _subset_bits(n: int) -> np.ndarray:
    masks = np.arange(1 << n, dtype=np.int64)
    return ((masks[:, None] >> np.arange(n)) & 1).astype(np.int16)


def _vector_search(g: Graph, kappa: int, tau: int, first_only: bool) -> list[int]:
    b = _subset_bits(g.n)
    counts = b @ g.adjacency_matrix(dtype=np.int16)
    want = np.where(b == 1, kappa, tau)
    ok = np.flatnonzero((counts == want).all(axis=1))
    ok = ok[ok != 0]
    return [int(m) for m in (ok[:1] if first_only else ok)]


def _dfs_search(g: Graph, kappa: int, tau: int, first_only: bool) -> list[int]:
    n = g.n
    adj = g.adj
    found: list[int] = []
    lo, hi = min(kappa, tau), max(kappa, tau)

    def feasible(s: int, decided: int) -> bool:
        undecided = ((1 << n) - 1) & ~decided
        for w in range(n):
            c = (adj[w] & s).bit_count()
            r = (adj[w] & undecided).bit_count()
            if decided >> w & 1:
                need = kappa if s >> w & 1 else tau
                if not c <= need <= c + r:
                    return False
            elif c > hi or c + r < lo:
                return False
        return True

    def rec(v: int, s: int, decided: int):
        if first_only and found:
            return
        if v == n:
            if s:
                found.append(s)
            return
        for take in (1, 0):
            s2 = s | (take << v)
            d2 = decided | (1 << v)
            if feasible(s2, d2):
                rec(v + 1, s2, d2)

    rec(0, 0, 0)
    return found


def find_kt_regular(g: Graph, kappa: int, tau: int) -> KtRegularCertificate | None:
    """Exhaustive search for a nonempty (kappa, tau)-regular set; ``None``
    means the search space was exhausted."""
    _check_cap(g, REGULAR_CAP, "regular-set search")
    if g.n == 0:
        return None
    search = _vector_search if g.n <= _VECTOR_CAP else _dfs_search
    hits = search(g, kappa, tau, True)
    if not hits:
        return None
    return KtRegularCertificate(kappa, tau, frozenset(bits(hits[0])))


def all_kt_regular(g: Graph, kappa: int, tau: int) -> list[frozenset[int]]:
    _check_cap(g, REGULAR_CAP, "regular-set search")
    if g.n == 0:
        return []
    search = _vector_search if g.n <= _VECTOR_CAP else _dfs_search
    return [frozenset(bits(m)) for m in search(g, kappa, tau, False)]


def has_perfect_matching(g: Graph) -> bool:
    _check_cap(g, MATCHING_CAP, "perfect matching search")
    if g.n % 2:
        return False
    adj = g.adj

    def odd_component(rest: int) -> bool:
        while rest:
            comp = rest & -rest
            frontier = comp
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= adj[v]
                nxt &= rest & ~comp
                comp |= nxt
                frontier = nxt
            if comp.bit_count() % 2:
                return True
            rest &= ~comp
        return False

    @lru_cache(maxsize=None)
    def rec(rest: int) -> bool:
        if not rest:
            return True
        if odd_component(rest):
            return False
        low = rest & -rest
        v = low.bit_length() - 1
        for w in bits(adj[v] & rest):
            if rec(rest & ~low & ~(1 << w)):
                return True
        return False

    return rec((1 << g.n) - 1)


def is_q_graph_oracle(g: Graph, eps: float = 1e-6) -> bool:
    """``|upsilon(G) - alpha(G)| <= eps``."""
    from .qp import upsilon

    if g.m == 0:
        return True
    return abs(upsilon(g) - alpha(g)) <= eps


def is_tau_regular_stable(g: Graph, tau: int) -> bool:
    res = max_stable_set(g, all_maximum=True)
    return any(verify_kt_regular(g, s, 0, tau) for s in res.all_maximum)
