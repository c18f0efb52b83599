"""The parametric programs

    P_G(tau):  max 2 e'x - x'(A/tau + I)x   over x >= 0
    Q_G(tau):  min z'(A/tau + I)z           over the standard simplex

their convex-regime solver, an exact support-enumeration oracle for small
graphs, and the closed-form bounds on the stability number built on them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np
from numba import njit

from . import exact
from .errors import CapExceeded, GraphError, NotRegularError, NotStableError
from .graph import Graph, mask_of
from .spectra import exact_lambda_min, lambda_min

EPS = 1e-6
ASCENT_TOL = 1e-10
MAX_SWEEPS = 10**6
N_STARTS = 32
EXACT_CAP = 16


@dataclass(frozen=True)
class QpSolution:
    tau: float
    x_star: np.ndarray
    value: float
    multipliers: np.ndarray
    convex_regime: bool
    global_certified: bool
    trivial: bool = False
    sweeps: int = 0


@dataclass(frozen=True)
class SimplexQpSolution:
    tau: float
    z_star: np.ndarray
    nu: float


@dataclass(frozen=True)
class TauStableBounds:
    lower: float
    upper: float
    proven: bool


@njit(cache=True)
def _ascent(a, tau, x0, tol, max_sweeps):
    n = a.shape[0]
    x = x0.copy()
    g = a @ x
    for sweep in range(max_sweeps):
        biggest = 0.0
        for i in range(n):
            new = 1.0 - g[i] / tau
            if new < 0.0:
                new = 0.0
            d = new - x[i]
            if d != 0.0:
                x[i] = new
                for j in range(n):
                    g[j] += a[j, i] * d
                if abs(d) > biggest:
                    biggest = abs(d)
        if biggest <= tol:
            return x, sweep + 1
    return x, max_sweeps


def objective(a: np.ndarray, tau: float, x: np.ndarray) -> float:
    return float(2.0 * x.sum() - x @ x - (x @ (a @ x)) / tau)


def _polish(a: np.ndarray, tau: float, x: np.ndarray) -> np.ndarray | None:
    """Re-solve the stationarity system on the support of ``x``."""
    supp = np.flatnonzero(x > 1e-9)
    if len(supp) == 0:
        return None
    m = a[np.ix_(supp, supp)] / tau + np.eye(len(supp))
    xs, *_ = np.linalg.lstsq(m, np.ones(len(supp)), rcond=None)
    if xs.min() < -1e-12:
        return None
    y = np.zeros_like(x)
    y[supp] = np.maximum(xs, 0.0)
    grad_out = a @ y - tau
    out = np.setdiff1d(np.arange(len(x)), supp)
    if len(out) and grad_out[out].min() < -1e-9 * max(1.0, tau):
        return None
    return y


def _multipliers(a: np.ndarray, tau: float, x: np.ndarray) -> np.ndarray:
    y = a @ x - tau * (1.0 - x)
    y[x > 1e-9] = 0.0
    return np.maximum(y, 0.0)


def _greedy_stable(g: Graph, first: int) -> list[int]:
    chosen: list[int] = []
    blocked = 0
    order = [first] + sorted((v for v in range(g.n) if v != first), key=lambda v: (g.degree(v), v))
    for v in order:
        if not blocked >> v & 1:
            chosen.append(v)
            blocked |= g.adj[v] | (1 << v)
    return chosen


def _solve_core(g: Graph, tau: float, convex: bool, starts: int, seed: int, tol: float, max_sweeps: int):
    a = g.adjacency_matrix()
    n = g.n
    if convex:
        x, sweeps = _ascent(a, tau, np.zeros(n), tol, max_sweeps)
        best = x
        polished = _polish(a, tau, x)
        if polished is not None and objective(a, tau, polished) >= objective(a, tau, x) - 1e-12:
            best = polished
        return best, sweeps
    rng = np.random.default_rng(seed)
    inits = [np.zeros(n)]
    for v in range(min(n, starts // 2)):
        s = np.zeros(n)
        s[_greedy_stable(g, v)] = 1.0
        inits.append(s)
    while len(inits) < starts:
        inits.append(rng.random(n))
    best, best_val, total = None, -np.inf, 0
    for x0 in inits:
        x, sweeps = _ascent(a, tau, x0, tol, max_sweeps)
        total += sweeps
        val = objective(a, tau, x)
        if val > best_val + 1e-12:
            best, best_val = x, val
    return best, total


def solve_p_tau(
    g: Graph,
    tau: float,
    *,
    exact_small: bool = False,
    starts: int = N_STARTS,
    seed: int = 0,
    tol: float = ASCENT_TOL,
    max_sweeps: int = MAX_SWEEPS,
    lam_min: float | None = None,
) -> QpSolution:
    """Solve ``P_G(tau)``.

    For ``tau >= -lambda_min`` the program is concave and coordinate ascent
    finds the global maximum. Below that threshold a multi-start local
    ascent is used and the result is not certified, unless ``exact_small``
    asks for support enumeration (``n <= 16``).
    """
    tau = float(tau)
    if not tau > 0:
        raise ValueError(f"tau must be positive, got {tau}")
    n = g.n
    if g.m == 0:
        return QpSolution(tau, np.ones(n), float(n), np.zeros(n), True, True, trivial=True)
    lam = lambda_min(g) if lam_min is None else lam_min
    convex = tau >= -lam - 1e-12
    core = [v for v in range(n) if g.adj[v]]
    sub = g.induced(core) if len(core) < n else g
    xs, sweeps = _solve_core(sub, tau, convex, starts, seed, tol, max_sweeps)
    certified = convex
    a_sub = sub.adjacency_matrix()
    value = objective(a_sub, tau, xs)
    if not convex and exact_small and sub.n <= EXACT_CAP:
        ex = exact_upsilon_small(sub, tau)
        if ex > value + 1e-9:
            # the local search missed the global optimum; rebuild x from the winning support
            xs = _exact_argmax(sub, tau)
        value = float(ex)
        certified = True
    x = np.ones(n)
    x[core] = xs
    a = g.adjacency_matrix()
    mult = _multipliers(a, tau, x)
    return QpSolution(tau, x, value + (n - len(core)), mult, convex, certified, sweeps=sweeps)


def upsilon_solution(g: Graph) -> QpSolution:
    if g.m == 0:
        return solve_p_tau(g, 1.0)
    lam = lambda_min(g)
    return solve_p_tau(g, -lam, lam_min=lam)


def upsilon(g: Graph) -> float:
    """The convex bound ``upsilon(G) = upsilon_G(-lambda_min(G))``."""
    if g.m == 0:
        return float(g.n)
    return upsilon_solution(g).value


def solve_q_tau(g: Graph, tau: float, **kw) -> SimplexQpSolution:
    sol = solve_p_tau(g, tau, **kw)
    return SimplexQpSolution(sol.tau, sol.x_star / sol.value, 1.0 / sol.value)


# -- exact small-scale oracle ----------------------------------------------


def _support_batches(g: Graph, tau: float):
    """Yield ``(supports, solutions, feasible, singular)`` per support size."""
    a = g.adjacency_matrix()
    m = a / tau + np.eye(g.n)
    ones = None
    for k in range(1, g.n + 1):
        idx = np.array(list(combinations(range(g.n), k)), dtype=np.intp)
        blocks = m[idx[:, :, None], idx[:, None, :]]
        dets = np.linalg.det(blocks)
        singular = np.abs(dets) < 1e-9
        ones = np.ones((int((~singular).sum()), k, 1))
        sols = np.full((len(idx), k), np.nan)
        if (~singular).any():
            sols[~singular] = np.linalg.solve(blocks[~singular], ones)[:, :, 0]
        feasible = ~singular & (np.nan_to_num(sols, nan=-1.0).min(axis=1) >= -1e-9)
        yield idx, sols, feasible, singular


def _exact_support_value(g: Graph, tau: Fraction, support) -> Fraction | None:
    rows = [[(Fraction(g.adj[i] >> j & 1) / tau) + (1 if i == j else 0) for j in support] for i in support]
    x, null, _ = exact.solve(rows, [1] * len(support))
    if x is None or null or min(x) < 0:
        return None
    return sum(x, Fraction(0))


def exact_upsilon_small(g: Graph, tau) -> float | Fraction:
    """Global optimum of ``P_G(tau)`` by enumerating supports.

    Every maximiser can be moved (at constant value) to one whose support
    system ``(A_S/tau + I) x_S = e_S`` is nonsingular, so it is enough to
    solve those systems and keep the nonnegative solutions; the value at
    such a point is ``sum(x_S)``. For ``int``/``Fraction`` tau the answer
    is an exact ``Fraction``.
    """
    if g.n > EXACT_CAP:
        raise CapExceeded(f"exact enumeration is capped at n <= {EXACT_CAP} (got {g.n})")
    if isinstance(tau, bool) or not float(tau) > 0:
        raise ValueError("tau must be positive")
    rational = isinstance(tau, (int, Fraction))
    iso = len(g.isolated_vertices())
    core = g.induced(v for v in range(g.n) if g.adj[v]) if iso else g
    if core.n == 0:
        return Fraction(g.n) if rational else float(g.n)
    taf = float(tau)
    cands: list[tuple[float, tuple[int, ...]]] = []
    singular_supports: list[tuple[int, ...]] = []
    for idx, sols, feasible, singular in _support_batches(core, taf):
        vals = np.where(feasible, np.nan_to_num(sols).sum(axis=1), -np.inf)
        for r in np.flatnonzero(feasible):
            cands.append((float(vals[r]), tuple(idx[r])))
        if rational:
            singular_supports.extend(tuple(s) for s in idx[singular])
    if not rational:
        return max(v for v, _ in cands) + iso
    tq = Fraction(tau)
    for s in singular_supports:
        val = _exact_support_value(core, tq, s)
        if val is not None:
            cands.append((float(val), s))
    cands.sort(key=lambda c: -c[0])
    best: Fraction | None = None
    for val, s in cands:
        if best is not None and val < float(best) - 1e-6:
            break
        ex = _exact_support_value(core, tq, s)
        if ex is not None and (best is None or ex > best):
            best = ex
    return best + iso


def _exact_argmax(g: Graph, tau: float) -> np.ndarray:
    best_val, best_x = -np.inf, None
    for idx, sols, feasible, _ in _support_batches(g, tau):
        for r in np.flatnonzero(feasible):
            v = sols[r].sum()
            if v > best_val:
                best_val = v
                best_x = np.zeros(g.n)
                best_x[idx[r]] = np.maximum(sols[r], 0.0)
    return best_x


# -- optimality checks and bounds --------------------------------------------


def kkt_check(g: Graph, tau: float, x, tol: float = 1e-8) -> bool:
    """KKT conditions ``A x = tau (e - x) + y``, ``y >= 0``, ``x'y = 0`` plus the
    fixed-point form ``x_i = max(0, 1 - a_i x / tau)``."""
    x = np.asarray(x, dtype=float)
    if x.shape != (g.n,):
        raise ValueError(f"x has shape {x.shape}, expected ({g.n},)")
    if x.min(initial=0.0) < -tol:
        raise ValueError("x must be nonnegative")
    a = g.adjacency_matrix()
    ax = a @ x
    y = ax - tau * (1.0 - x)
    if y.min(initial=0.0) < -tol:
        return False
    if x @ y > tol:
        return False
    fixed = np.maximum(0.0, 1.0 - ax / tau)
    return bool(np.abs(fixed - x).max(initial=0.0) <= tol)


def alpha_lower_bounds(g: Graph, tau: float, sol: QpSolution) -> tuple[float, float]:
    """The two lower bounds on alpha obtained from an optimal x* of P_G(tau), tau >= 1."""
    if tau < 1:
        raise ValueError("lower bounds need tau >= 1")
    x = sol.x_star
    sq = float(x @ x)
    a = g.adjacency_matrix()
    lb1 = sq - (tau - 2.0) * (sol.value - sq)
    lb2 = sol.value**2 / float(x @ (a @ x) + sq)
    return lb1, lb2


def hoffman_bound(g: Graph) -> float:
    """``n * (-lambda_n) / (lambda_1 - lambda_n)`` for a regular graph."""
    if not g.is_regular():
        raise NotRegularError("the ratio bound is defined here for regular graphs only")
    if g.m == 0:
        raise GraphError("graph has no edges")
    p = g.degree(0)  # lambda_1 of a p-regular graph
    lam, k = exact_lambda_min(g)
    if k is not None:
        return float(Fraction(g.n * -k, p - k))
    return g.n * -lam / (p - lam)


def _luz_threshold(g: Graph) -> float:
    lam, k = exact_lambda_min(g)
    return float(-k) if k is not None else -lam


def luz_condition(g: Graph, s) -> bool:
    """``-lambda_min(G) <= min |N(i) & S|`` over vertices outside the stable set S."""
    s = set(s)
    if not g.is_stable(s):
        raise NotStableError("the vertex set is not stable")
    mask = mask_of(s)
    counts = [(g.adj[i] & mask).bit_count() for i in range(g.n) if i not in s]
    if not counts:
        return True
    return _luz_threshold(g) <= min(counts)


def tau_stable_bounds(g: Graph, tau: int) -> TauStableBounds:
    """Degree bounds valid for tau-regular-stable graphs; ``proven`` says
    whether the oracle confirmed the graph is tau-regular-stable."""
    from .oracle import is_tau_regular_stable

    lower = g.n * tau / (g.max_degree + tau)
    upper = g.n * tau / (g.min_degree + tau)
    try:
        proven = is_tau_regular_stable(g, tau)
    except CapExceeded:
        proven = False
    return TauStableBounds(lower, upper, proven)
