"""Recognition of graphs whose stability number equals the convex bound.

The driver applies deletion rules on ``v`` and ``N(v)``, recurses where a
rule reduces the question to a subgraph and, on an adverse residual graph,
decides through the existence of a (0, tau)-regular set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from . import exact
from .errors import CapExceeded, GraphError
from .graph import Graph
from .io import to_graph6
from .qp import EPS, luz_condition, solve_p_tau
from .spectra import integer_candidate, integer_eigen_check, lambda_min

STAR_CAP = 14

_MEMO: dict[str, tuple[float, float]] = {}
_EIG_MEMO: dict[tuple[str, int], bool] = {}


def clear_cache():
    _MEMO.clear()
    _EIG_MEMO.clear()


def _values(h: Graph) -> tuple[float, float]:
    """``(upsilon, lambda_min)``, memoized by graph6 string."""
    key = to_graph6(h)
    hit = _MEMO.get(key)
    if hit is None:
        if h.m == 0:
            hit = (float(h.n), 0.0)
        else:
            lam = lambda_min(h)
            hit = (solve_p_tau(h, -lam, lam_min=lam).value, lam)
        _MEMO[key] = hit
    return hit


def _has_eigenvalue(h: Graph, k: int) -> bool:
    key = (to_graph6(h), k)
    hit = _EIG_MEMO.get(key)
    if hit is None:
        hit = _EIG_MEMO[key] = integer_eigen_check(h, k).is_eigenvalue
    return hit


def _integer_lambda_min(h: Graph, lam: float) -> int | None:
    k = integer_candidate(lam)
    return k if k is not None and _has_eigenvalue(h, k) else None


def _near_int(x: float, eps: float) -> bool:
    return abs(x - round(x)) <= eps


@dataclass
class Verdict:
    status: str
    upsilon: float
    lambda_min: float
    certificate: dict | None = None
    adverse_subgraph: list[str] | None = None
    trace: list[dict] = field(default_factory=list)
    verification_failed: bool = False

    @property
    def alpha_bound(self) -> int:
        return math.floor(self.upsilon + EPS)

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "alpha_bound": self.alpha_bound,
            "upsilon": self.upsilon,
            "lambda_min": self.lambda_min,
            "certificate": self.certificate,
            "adverse_subgraph": self.adverse_subgraph,
            "trace": self.trace,
        }


def is_adverse(g: Graph, eps: float = EPS) -> bool:
    """No isolated vertices, integral upsilon and lambda_min, and deleting any
    closed-off neighbourhood ``N(i)`` changes neither value."""
    if g.isolated_vertices():
        raise GraphError("adverse graphs have no isolated vertices")
    if g.n == 0:
        return False
    ups, lam = _values(g)
    if not _near_int(ups, eps):
        return False
    k = _integer_lambda_min(g, lam)
    if k is None:
        return False
    for i in range(g.n):
        sub = g.delete_vertices(g.neighbors(i))
        su, _ = _values(sub)
        # interlacing: lambda_min(G - U) >= k, so equality iff k is still an eigenvalue
        if abs(su - ups) > eps or not _has_eigenvalue(sub, k):
            return False
    return True


class _Outcome:
    def __init__(self, status: str, info: dict | None = None, adverse: list[str] | None = None):
        self.status = status
        self.info = info or {}
        self.adverse = adverse


def _names(h: Graph, vs: Iterable[int]) -> list[str]:
    return [h.label(v) for v in sorted(vs)]


def _decide(g: Graph, eps: float, trace: list[dict]) -> _Outcome:
    core = [v for v in range(g.n) if g.adj[v]]
    if not core:
        trace.append({"rule": "edgeless", "graph": _names(g, range(g.n))})
        return _Outcome("Q", {"rule": "edgeless"})
    h = g.induced(core) if len(core) < g.n else g
    comps = h.components()
    if len(comps) > 1:
        return _decide_components(h, comps, eps, trace)
    return _decide_connected(h, eps, trace)


def _decide_components(h: Graph, comps, eps: float, trace: list[dict]) -> _Outcome:
    # one global tau = -lambda_min(G) applies to every component
    lam = lambda_min(h)
    outcomes = []
    for comp in comps:
        c = h.induced(comp)
        cu, cl = _values(c)
        if cl > lam + eps:
            at_tau = solve_p_tau(c, -lam).value
            if at_tau > cu + eps:
                trace.append(
                    {"rule": "component-gap", "component": _names(c, range(c.n)), "upsilon_at_tau": at_tau, "upsilon": cu}
                )
                return _Outcome("NotQ", {"rule": "component-gap", "component": _names(c, range(c.n))})
        trace.append({"rule": "component", "component": _names(c, range(c.n))})
        out = _decide(c, eps, trace)
        if out.status == "NotQ":
            return out
        outcomes.append(out)
    pending = [o for o in outcomes if o.status != "Q"]
    if pending:
        return pending[0]
    return _Outcome("Q", {"rule": "components"})


def _decide_connected(h: Graph, eps: float, trace: list[dict]) -> _Outcome:
    ups, lam = _values(h)
    trace.append({"rule": "evaluate", "graph": _names(h, range(h.n)), "upsilon": ups, "lambda_min": lam})
    if not _near_int(ups, eps):
        trace.append({"rule": "non-integral", "upsilon": ups})
        return _Outcome("NotQ", {"rule": "non-integral", "upsilon": ups})
    order = sorted(range(h.n), key=lambda v: (-h.degree(v), v))
    evals = {}
    for v in order:
        pair = []
        for kind, removed in (("v", [v]), ("N(v)", h.neighbors(v))):
            sub = h.delete_vertices(removed)
            su, sl = _values(sub)
            if sl > lam + eps and abs(su - ups) <= eps:
                trace.append(
                    {"rule": "rule1", "U": _names(h, removed), "kind": kind, "upsilon": su, "lambda_min": sl}
                )
                return _Outcome("Q", {"rule": "rule1", "U": _names(h, removed)})
            pair.append((sub, su))
        evals[v] = pair
    for v in order:
        (_, a), (_, b) = evals[v]
        if ups > max(a, b) + eps:
            trace.append({"rule": "rule2", "vertex": h.label(v), "upsilon_minus_v": a, "upsilon_minus_N": b})
            return _Outcome("NotQ", {"rule": "rule2", "vertex": h.label(v), "upsilon_minus_v": a, "upsilon_minus_N": b})
    for v in order:
        (sv, a), (sn, b) = evals[v]
        if abs(a - b) > eps:
            sub, kind = (sv, "v") if abs(a - ups) <= eps else (sn, "N(v)")
            trace.append({"rule": "rule3", "vertex": h.label(v), "kind": kind})
            return _decide(sub, eps, trace)
    if not is_adverse(h, eps):
        trace.append({"rule": "none"})
        return _Outcome("Undetermined", {"rule": "none"})
    from .regular import search_regular_set

    names = _names(h, range(h.n))
    k = _integer_lambda_min(h, lam)
    try:
        res = search_regular_set(h, 0, -k)
    except CapExceeded as exc:
        trace.append({"rule": "adverse", "graph": names, "note": str(exc)})
        return _Outcome("Undetermined", {"rule": "adverse-cap"}, names)
    if res.certificate is not None:
        s = _names(h, res.certificate.set)
        trace.append({"rule": "adverse", "graph": names, "regular_set": s, "method": res.method})
        return _Outcome("Q", {"rule": "adverse", "regular_set": s, "tau": -k}, names)
    trace.append({"rule": "adverse", "graph": names, "regular_set": None, "method": res.method})
    return _Outcome("NotQ", {"rule": "adverse-absent", "tau": -k}, names)


def _stable_certificate(g: Graph):
    from .oracle import max_stable_set

    res = max_stable_set(g, all_maximum=True)
    for s in res.all_maximum:
        if luz_condition(g, s):
            return s
    return None


def recognize(g: Graph, eps: float = EPS) -> Verdict:
    trace: list[dict] = []
    if g.m == 0:
        ups, lam = float(g.n), 0.0
    else:
        ups, lam = _values(g)
    out = _decide(g, eps, trace)
    verdict = Verdict(out.status, ups, lam, None, out.adverse, trace)
    if out.status == "Q":
        try:
            s = _stable_certificate(g)
        except CapExceeded:
            verdict.certificate = {"kind": "reduction", **out.info}
            return verdict
        if s is None:
            verdict.status = "Undetermined"
            verdict.verification_failed = True
            verdict.certificate = {"kind": "verification-failed", **out.info}
        else:
            verdict.certificate = {"kind": "stable-set", "set": _names(g, s), "luz": True, **out.info}
    elif out.status == "NotQ":
        verdict.certificate = {"kind": "witness", **out.info}
    else:
        verdict.certificate = out.info or None
    return verdict


def star_set_witness(g: Graph, eps: float = EPS) -> tuple[int, ...] | None:
    """A star set X for the (integer) least eigenvalue with
    ``upsilon(G - X) = upsilon(G)``, if one exists."""
    if g.m == 0:
        return ()
    if g.n > STAR_CAP:
        raise CapExceeded(f"star-set enumeration is capped at n <= {STAR_CAP}")
    ups, lam = _values(g)
    k = _integer_lambda_min(g, lam)
    if k is None:
        raise ValueError("the least eigenvalue is not an integer")
    mult = g.n - exact.bareiss_rank(exact.shifted_adjacency(g, k))
    for X in combinations(range(g.n), mult):
        rest = g.delete_vertices(X)
        if exact.bareiss_det(exact.shifted_adjacency(rest, k)) == 0:
            continue
        if abs(_values(rest)[0] - ups) <= eps:
            return X
    return None


def recognize_via_star_sets(g: Graph, eps: float = EPS) -> bool:
    return star_set_witness(g, eps) is not None


@dataclass
class ConjectureReport:
    scanned: int = 0
    adverse: int = 0
    skipped: int = 0
    counterexamples: list[str] = field(default_factory=list)
    notices: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "scanned": self.scanned,
            "adverse": self.adverse,
            "skipped": self.skipped,
            "counterexamples": self.counterexamples,
            "notices": self.notices,
        }


def conjecture_scan(graphs: Iterable[Graph], eps: float = EPS) -> ConjectureReport:
    """Check every adverse graph in the stream against the oracle."""
    from .oracle import is_q_graph_oracle

    rep = ConjectureReport()
    for g in graphs:
        rep.scanned += 1
        if g.n == 0 or g.isolated_vertices():
            continue
        if not is_adverse(g, eps):
            continue
        rep.adverse += 1
        try:
            ok = is_q_graph_oracle(g, eps)
        except CapExceeded as exc:
            rep.skipped += 1
            rep.notices.append(f"{to_graph6(g)}: {exc}")
            continue
        if not ok:
            rep.counterexamples.append(to_graph6(g))
    return rep
