"""(kappa, tau)-regular sets through the linear system

    (A_G - (kappa - tau) I) x = tau e

solved exactly over the rationals. A set is (kappa, tau)-regular iff its
characteristic vector is a 0-1 solution of this system.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm

import numpy as np

from . import exact
from .errors import CapExceeded, NotRegularError
from .graph import Graph, mask_of
from .oracle import KtRegularCertificate, verify_kt_regular

ENUM_CAP = 24


@dataclass(frozen=True)
class LinearSystemSolution:
    kappa: int
    tau: int
    lam: int
    particular: tuple[Fraction, ...] | None
    nullspace: tuple[tuple[Fraction, ...], ...]
    consistent: bool
    free: tuple[int, ...] = field(default=(), repr=False)


@dataclass(frozen=True)
class RegularSetSearch:
    certificate: KtRegularCertificate | None
    method: str
    cardinality: int | None
    exhausted: bool
    trace: tuple[str, ...] = ()


def _check_int(name: str, value, low: int):
    if isinstance(value, bool) or int(value) != value:
        raise ValueError(f"{name} must be an integer, got {value!r}")
    if value < low:
        raise ValueError(f"{name} must be >= {low}, got {value}")
    return int(value)


@lru_cache(maxsize=4096)
def _unit_system(g: Graph, lam: int):
    """Solve ``(A - lam I) x = e`` once; scaling gives every rhs ``tau e``."""
    rows = exact.shifted_adjacency(g, lam)
    x, null, piv = exact.solve(rows, [1] * g.n)
    free = tuple(c for c in range(g.n) if c not in set(piv))
    return (None if x is None else tuple(x)), tuple(tuple(v) for v in null), free


def kt_linear_system(g: Graph, kappa: int, tau: int) -> LinearSystemSolution:
    kappa = _check_int("kappa", kappa, 0)
    tau = _check_int("tau", tau, 1)
    lam = kappa - tau
    x, null, free = _unit_system(g, lam)
    part = None if x is None else tuple(tau * v for v in x)
    return LinearSystemSolution(kappa, tau, lam, part, null, x is not None, free)


def cardinality_test(sol: LinearSystemSolution) -> int | None:
    """Forced size ``e'x`` of any (kappa, tau)-regular set, or ``None`` when it
    is not an integer (and so no such set exists)."""
    if not sol.consistent:
        raise ValueError("the system is inconsistent")
    total = sum(sol.particular, Fraction(0))
    return int(total) if total.denominator == 1 else None


def _enumerate_affine(sol: LinearSystemSolution, first_only: bool = True) -> list[frozenset[int]]:
    """0-1 points of ``particular + span(nullspace)``: with the RREF basis the
    free coordinates are the coefficients, so try each of them in {0,1}."""
    d = len(sol.free)
    if d > ENUM_CAP:
        raise CapExceeded(f"affine enumeration over {d} free variables exceeds {ENUM_CAP}")
    n = len(sol.particular)
    den = lcm(*(v.denominator for v in sol.particular), *(v.denominator for u in sol.nullspace for v in u))
    base = np.array([int(v * den) for v in sol.particular], dtype=np.int64)
    u = np.array([[int(v * den) for v in vec] for vec in sol.nullspace], dtype=np.int64).reshape(d, n)
    found = []
    chunk = 1 << min(d, 14)
    for start in range(0, 1 << d, chunk):
        codes = np.arange(start, min(start + chunk, 1 << d), dtype=np.int64)
        c = (codes[:, None] >> np.arange(d)) & 1
        pts = base + c @ u
        ok = np.flatnonzero(((pts == 0) | (pts == den)).all(axis=1) & (pts.sum(axis=1) > 0))
        for r in ok:
            found.append(frozenset(int(i) for i in np.flatnonzero(pts[r])))
            if first_only:
                return found
    return found


def search_regular_set(g: Graph, kappa: int, tau: int, trace: bool = False) -> RegularSetSearch:
    sol = kt_linear_system(g, kappa, tau)
    lines: list[str] = []
    if not sol.consistent:
        return RegularSetSearch(None, "inconsistent", None, True)
    card = cardinality_test(sol)
    if card is None:
        return RegularSetSearch(None, "cardinality", None, True)
    if not sol.nullspace:
        x = sol.particular
        if all(v in (0, 1) for v in x) and any(x):
            s = frozenset(i for i, v in enumerate(x) if v == 1)
            return _certified(g, kappa, tau, s, "unique", card, lines)
        return RegularSetSearch(None, "unique", card, True)
    if kappa == 0:
        from .spectra import exact_lambda_min

        _, k = exact_lambda_min(g)
        if k is not None and k == -tau:
            from .star import find_star_set, gomory_search, reduced_system

            system = reduced_system(g, find_star_set(g, -tau), tau)
            res = gomory_search(system, trace=trace)
            lines.extend(res.trace)
            if res.status == "found":
                return _certified(g, kappa, tau, res.solution, "gomory", card, lines)
            if res.status == "infeasible":
                return RegularSetSearch(None, "gomory", card, True, tuple(lines))
            lines.append("gomory search inconclusive; falling back to enumeration")
    hits = _enumerate_affine(sol)
    if hits:
        return _certified(g, kappa, tau, hits[0], "enumeration", card, lines)
    return RegularSetSearch(None, "enumeration", card, True, tuple(lines))


def _certified(g, kappa, tau, s, method, card, lines) -> RegularSetSearch:
    if not verify_kt_regular(g, s, kappa, tau):
        from .errors import VerificationError

        raise VerificationError(f"{method} produced a set that is not ({kappa},{tau})-regular")
    return RegularSetSearch(KtRegularCertificate(kappa, tau, frozenset(s)), method, card, True, tuple(lines))


def solve_01(g: Graph, kappa: int, tau: int) -> KtRegularCertificate | None:
    return search_regular_set(g, kappa, tau).certificate


def thompson_vector(g: Graph, s, kappa: int, tau: int) -> list[Fraction] | None:
    """``x - tau/(p + tau - kappa) e`` for the characteristic vector x of S."""
    if not g.is_regular():
        raise NotRegularError("the eigenvector test applies to regular graphs")
    p = g.degree(0) if g.n else 0
    denom = p + tau - kappa
    if denom == 0 and tau:
        return None
    mask = mask_of(s)
    shift = Fraction(tau, denom) if tau else Fraction(0)
    return [Fraction(mask >> v & 1) - shift for v in range(g.n)]


def thompson_verify(g: Graph, s, kappa: int, tau: int) -> bool:
    """True iff the shifted characteristic vector lies in the kernel of
    ``A - (kappa - tau) I`` (checked exactly, in integers)."""
    if not g.is_regular():
        raise NotRegularError("the eigenvector test applies to regular graphs")
    p = g.degree(0) if g.n else 0
    denom = p + tau - kappa
    if denom == 0 and tau:
        return False
    lam = kappa - tau
    mask = mask_of(s)
    # with tau = 0 the shift vanishes and the vector is x itself
    scale = denom if tau else 1
    u = [scale * (mask >> v & 1) - tau for v in range(g.n)]
    for v in range(g.n):
        acc = -lam * u[v]
        a = g.adj[v]
        while a:
            low = a & -a
            acc += u[low.bit_length() - 1]
            a ^= low
        if acc:
            return False
    return True
