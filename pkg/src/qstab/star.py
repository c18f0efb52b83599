"""Star sets, the reduced system they induce, exact simplex tableaux and a
Gomory fractional dual search for 0-1 solutions.

For an eigenvalue ``lam`` the co-star rows of ``A - lam I`` span its row
space, so with ``lam = -tau`` the system ``(A + tau I) x = tau e`` is
equivalent to the rows indexed by the co-star set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import floor

import numpy as np

from . import exact
from .errors import CapExceeded, NotAnEigenvalueError
from .graph import Graph
from .oracle import verify_kt_regular

PARTITION_CAP = 20
MAX_PIVOTS = 10_000
FLOAT_TOL = 1e-8


@dataclass(frozen=True)
class StarSet:
    eigenvalue: float
    X: tuple[int, ...]
    co_star: tuple[int, ...]

    def blocks(self, g: Graph):
        """``(A_X, N, C)``: the star block, co-star rows over star columns,
        and the co-star block."""
        a = g.adjacency_rows()
        sub = lambda rs, cs: [[a[r][c] for c in cs] for r in rs]
        return sub(self.X, self.X), sub(self.co_star, self.X), sub(self.co_star, self.co_star)


def _co_star_nonsingular(g: Graph, lam: int, X) -> bool:
    keep = [v for v in range(g.n) if v not in set(X)]
    rows = exact.shifted_adjacency(g.induced(keep), lam)
    return exact.bareiss_det(rows) != 0


def _multiplicity(g: Graph, lam: int) -> int:
    return g.n - exact.bareiss_rank(exact.shifted_adjacency(g, lam))


def is_star_set(g: Graph, lam: int, X) -> bool:
    X = set(X)
    return len(X) == _multiplicity(g, lam) and _co_star_nonsingular(g, lam, X)


def star_set_from(g: Graph, lam: int, X) -> StarSet:
    lam = int(lam)
    X = tuple(sorted(set(X)))
    mult = _multiplicity(g, lam)
    if mult == 0:
        raise NotAnEigenvalueError(f"{lam} is not an eigenvalue")
    if len(X) != mult or not _co_star_nonsingular(g, lam, X):
        raise ValueError(f"{list(X)} is not a star set for {lam}")
    return StarSet(lam, X, tuple(v for v in range(g.n) if v not in set(X)))


def find_star_set(g: Graph, lam: int) -> StarSet:
    """Star set whose co-star set is the pivot-column set of ``A - lam I``."""
    lam = int(lam)
    rows = exact.shifted_adjacency(g, lam)
    _, piv = exact.rref(rows)
    if len(piv) == g.n:
        raise NotAnEigenvalueError(f"{lam} is not an eigenvalue")
    X = [v for v in range(g.n) if v not in set(piv)]
    return star_set_from(g, lam, X)


def _eigen_groups(g: Graph):
    from .spectra import eigen_sym, integer_candidate, integer_eigen_check

    out = []
    for mu, mult in eigen_sym(g).distinct(1e-6):
        k = integer_candidate(mu)
        if k is not None and integer_eigen_check(g, k).multiplicity == mult:
            out.append((k, mult, True))
        else:
            out.append((mu, mult, False))
    return out


def _star_checker(g: Graph, mu, is_int: bool):
    if is_int:
        return lambda X: _co_star_nonsingular(g, mu, X)
    a = g.adjacency_matrix()

    def check(X):
        keep = [v for v in range(g.n) if v not in set(X)]
        if not keep:
            return True
        vals = np.linalg.eigvalsh(a[np.ix_(keep, keep)])
        return bool(np.min(np.abs(vals - mu)) > FLOAT_TOL)

    return check


def _partitions(g: Graph, first_only: bool):
    if g.n > PARTITION_CAP:
        raise CapExceeded(f"star partition search is capped at n <= {PARTITION_CAP}")
    groups = sorted(_eigen_groups(g), key=lambda t: -t[1])
    checks = [_star_checker(g, mu, exact_) for mu, _, exact_ in groups]

    def rec(i, left):
        if i == len(groups) - 1:
            X = tuple(sorted(left))
            if checks[i](X):
                yield [X]
            return
        for X in combinations(sorted(left), groups[i][1]):
            if checks[i](X):
                for tail in rec(i + 1, left - set(X)):
                    yield [X, *tail]

    for parts in rec(0, set(range(g.n))):
        yield [
            StarSet(mu, X, tuple(v for v in range(g.n) if v not in set(X)))
            for (mu, _, _), X in zip(groups, parts)
        ]
        if first_only:
            return


def find_star_partition(g: Graph) -> list[StarSet]:
    """One star set per distinct eigenvalue, covering V (largest
    multiplicities chosen first)."""
    if g.n == 0:
        return []
    return next(_partitions(g, True))


def count_star_partitions(g: Graph) -> int:
    return sum(1 for _ in _partitions(g, False)) if g.n else 1


@dataclass(frozen=True)
class RationalSystem:
    """``rows x = rhs`` over all n vertex variables."""

    graph: Graph
    star: StarSet
    tau: int
    rows: tuple[tuple[int, ...], ...]
    rhs: tuple[int, ...]
    consistent: bool = True

    def residual(self, x) -> list[Fraction]:
        return [a - b for a, b in zip(exact.matvec(self.rows, x), self.rhs)]


def reduced_system(g: Graph, star: StarSet, tau: int) -> RationalSystem:
    if star.eigenvalue != -tau:
        raise ValueError(f"star set is for {star.eigenvalue}, expected {-tau}")
    full = exact.shifted_adjacency(g, -tau)
    rows = tuple(tuple(full[v]) for v in star.co_star)
    # the co-star rows span the row space, but the dropped equations only
    # follow from them when the full system is consistent
    x = initial_tableau(RationalSystem(g, star, int(tau), rows, (int(tau),) * len(rows))).solution()
    ok = all(r == tau for r in exact.matvec(full, x))
    return RationalSystem(g, star, int(tau), rows, (int(tau),) * len(rows), ok)


@dataclass(frozen=True)
class Tableau:
    """``x_B + body x_N = rhs``."""

    basis: tuple[int, ...]
    nonbasic: tuple[int, ...]
    body: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]
    cuts: tuple[tuple[tuple[Fraction, ...], Fraction], ...] = ()
    labels: tuple[str, ...] = field(default=(), compare=False)

    def solution(self) -> list[Fraction]:
        n = len(self.basis) + len(self.nonbasic)
        x = [Fraction(0)] * n
        for v, r in zip(self.basis, self.rhs):
            x[v] = r
        return x

    def support(self) -> frozenset[int]:
        return frozenset(v for v, r in zip(self.basis, self.rhs) if r != 0)

    def column(self, var: int) -> tuple[Fraction, ...]:
        k = self.nonbasic.index(var)
        return tuple(row[k] for row in self.body)

    def row(self, var: int) -> tuple[Fraction, ...]:
        return self.body[self.basis.index(var)]

    def render(self) -> str:
        name = lambda v: "x_" + (self.labels[v] if self.labels else str(v))
        cells = [[""] + [name(v) for v in self.nonbasic] + [""]]
        for v, row, r in zip(self.basis, self.body, self.rhs):
            cells.append([name(v)] + [str(x) for x in row] + [str(r)])
        widths = [max(len(c[i]) for c in cells) for i in range(len(cells[0]))]
        k = len(self.nonbasic)
        lines = []
        for i, c in enumerate(cells):
            head = c[0].rjust(widths[0])
            mid = " ".join(x.rjust(w) for x, w in zip(c[1 : 1 + k], widths[1 : 1 + k]))
            lines.append(f"{head} | {mid} | {c[-1].rjust(widths[-1])}")
            if i == 0:
                lines.append("-" * len(lines[0]))
        return "\n".join(lines)


def initial_tableau(sys: RationalSystem) -> Tableau:
    B, N = sys.star.co_star, sys.star.X
    basis_m = [[row[c] for c in B] for row in sys.rows]
    try:
        inv = exact.inverse(basis_m)
    except ZeroDivisionError as exc:
        raise ValueError("co-star basis is singular") from exc
    nmat = [[row[c] for c in N] for row in sys.rows]
    body = exact.matmul(inv, nmat) if N else [[] for _ in B]
    rhs = exact.matvec(inv, sys.rhs)
    labels = tuple(sys.graph.label(v) for v in range(sys.graph.n))
    return Tableau(tuple(B), tuple(N), tuple(map(tuple, body)), tuple(rhs), (), labels)


def pivot(t: Tableau, row: int, col: int) -> Tableau:
    """Exchange basic variable ``row`` with nonbasic variable ``col``."""
    r = t.basis.index(row)
    k = t.nonbasic.index(col)
    p = t.body[r][k]
    if p == 0:
        raise ZeroDivisionError(f"zero pivot at ({row}, {col})")
    prow = [x / p for x in t.body[r]]
    prow[k] = 1 / p
    prhs = t.rhs[r] / p
    body, rhs = [], []
    for i, (old, b) in enumerate(zip(t.body, t.rhs)):
        if i == r:
            body.append(tuple(prow))
            rhs.append(prhs)
            continue
        f = old[k]
        new = [x - f * y for x, y in zip(old, prow)]
        new[k] = -f / p
        body.append(tuple(new))
        rhs.append(b - f * prhs)
    basis = list(t.basis)
    basis[r] = col
    nonbasic = list(t.nonbasic)
    nonbasic[k] = row
    return Tableau(tuple(basis), tuple(nonbasic), tuple(body), tuple(rhs), t.cuts, t.labels)


@dataclass(frozen=True)
class BasicSolution:
    basis: tuple[int, ...]
    x: tuple[Fraction, ...]
    is_01: bool

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, v in enumerate(self.x) if v != 0)


@dataclass(frozen=True)
class BasicSolutions:
    solutions: tuple[BasicSolution, ...]
    complete: bool

    def zero_one_sets(self) -> list[frozenset[int]]:
        return [s.support for s in self.solutions if s.is_01]


def enumerate_basic_solutions(sys: RationalSystem, limit: int = 100_000) -> BasicSolutions:
    """Distinct nonnegative basic solutions over all column bases; stops
    (flagged incomplete) after ``limit`` candidate bases."""
    n = sys.graph.n
    r = len(sys.rows)
    seen: dict[tuple, BasicSolution] = {}
    complete = True
    if not sys.consistent:
        return BasicSolutions((), True)
    for count, cols in enumerate(combinations(range(n), r)):
        if count >= limit:
            complete = False
            break
        sub = [[row[c] for c in cols] for row in sys.rows]
        if exact.bareiss_det(sub) == 0:
            continue
        xb, _, _ = exact.solve(sub, sys.rhs)
        if any(v < 0 for v in xb):
            continue
        x = [Fraction(0)] * n
        for c, v in zip(cols, xb):
            x[c] = v
        key = tuple(x)
        if key not in seen:
            seen[key] = BasicSolution(cols, key, all(v in (0, 1) for v in x))
    sols = sorted(seen.values(), key=lambda s: s.x, reverse=True)
    return BasicSolutions(tuple(sols), complete)


@dataclass(frozen=True)
class GomoryResult:
    status: str
    solution: frozenset[int] | None
    pivots: int
    cuts: int
    trace: tuple[str, ...] = ()


def _frac(x: Fraction) -> Fraction:
    return x - floor(x)


class _Dictionary:
    """Each variable written as ``beta + sum_k a_k t_k`` over the nonbasic
    variables ``t``. Variable ids: 0 is the objective ``z = sum x_X``,
    1..n are the x's, n+1..2n the slacks ``1 - x``, then cut slacks."""

    def __init__(self, t: Tableau):
        n = len(t.basis) + len(t.nonbasic)
        self.n = n
        self.nonbasic = [1 + v for v in t.nonbasic]
        k = len(self.nonbasic)
        rows: list[list] = [None] * (2 * n + 1)
        for v, brow, r in zip(t.basis, t.body, t.rhs):
            rows[1 + v] = [r, [-x for x in brow]]
        for j, v in enumerate(t.nonbasic):
            rows[1 + v] = [Fraction(0), [Fraction(int(i == j)) for i in range(k)]]
        rows[0] = [Fraction(0), [Fraction(1)] * k]
        for v in range(n):
            beta, a = rows[1 + v]
            rows[n + 1 + v] = [1 - beta, [-x for x in a]]
        self.rows = rows
        self.labels = t.labels

    def lex_rows(self):
        return self.rows[: self.n + 1]

    def do_pivot(self, r: int, k: int):
        beta_r, a_r = self.rows[r]
        p = a_r[k]
        ratio = [x / p for x in a_r]
        shift = beta_r / p
        for row in self.rows:
            c = row[1][k]
            if c == 0:
                continue
            row[0] -= c * shift
            a = row[1]
            for l in range(len(a)):
                if l != k:
                    a[l] -= c * ratio[l]
            a[k] = c / p
        self.nonbasic[k] = r

    def add_cut(self, src: int) -> int:
        beta, a = self.rows[src]
        self.rows.append([-_frac(beta), [_frac(-x) for x in a]])
        return len(self.rows) - 1

    def name(self, var: int) -> str:
        n = self.n
        if var == 0:
            return "z"
        if var <= n:
            return "x_" + (self.labels[var - 1] if self.labels else str(var - 1))
        if var <= 2 * n:
            return "s_" + (self.labels[var - n - 1] if self.labels else str(var - n - 1))
        return f"c_{var - 2 * n - 1}"

    def render(self) -> str:
        basic = [v for v in range(len(self.rows)) if v not in set(self.nonbasic)]
        head = "basis | " + " ".join(self.name(v) for v in self.nonbasic) + " | rhs"
        lines = [head]
        for v in basic:
            beta, a = self.rows[v]
            lines.append(f"{self.name(v)} | " + " ".join(str(-x) for x in a) + f" | {beta}")
        return "\n".join(lines)


def gomory_search(sys: RationalSystem, max_pivots: int = MAX_PIVOTS, trace: bool = False) -> GomoryResult:
    """Lexicographic dual simplex with Gomory fractional cuts on the reduced
    system plus ``0 <= x <= 1``, minimizing the sum of the star variables.

    ``status`` is ``found`` (a verified 0-1 solution), ``infeasible`` or
    ``inconclusive`` (pivot cap reached).
    """
    t = initial_tableau(sys)
    g = sys.graph
    lines: list[str] = []
    if trace:
        lines.append("initial tableau\n" + t.render())
    if not sys.consistent or sum(t.rhs, Fraction(0)).denominator != 1:
        return GomoryResult("infeasible", None, 0, 0, tuple(lines))
    d = _Dictionary(t)
    pivots = cuts = 0
    while True:
        leave = next((v for v in range(1, len(d.rows)) if v not in d.nonbasic and d.rows[v][0] < 0), None)
        if leave is None:
            lex = d.lex_rows()
            src = next((v for v, row in enumerate(lex) if row[0].denominator != 1), None)
            if src is None:
                s = frozenset(v for v in range(g.n) if d.rows[1 + v][0] == 1)
                if not s or not verify_kt_regular(g, s, 0, sys.tau):
                    from .errors import VerificationError

                    raise VerificationError("integral point is not a (0,tau)-regular set")
                return GomoryResult("found", s, pivots, cuts, tuple(lines))
            leave = d.add_cut(src)
            cuts += 1
            if trace:
                lines.append(f"cut from {d.name(src)}")
        if pivots >= max_pivots:
            return GomoryResult("inconclusive", None, pivots, cuts, tuple(lines))
        a_r = d.rows[leave][1]
        cand = [k for k, x in enumerate(a_r) if x > 0]
        if not cand:
            return GomoryResult("infeasible", None, pivots, cuts, tuple(lines))
        lex = d.lex_rows()
        enter = min(cand, key=lambda k: (tuple(row[1][k] / a_r[k] for row in lex), k))
        if trace:
            lines.append(f"pivot: {d.name(leave)} leaves, {d.name(d.nonbasic[enter])} enters")
        d.do_pivot(leave, enter)
        pivots += 1
        if trace:
            lines.append(d.render())
