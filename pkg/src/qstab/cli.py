"""``qstab`` command line: analyze, recognize, regular-set, scan.

Every command prints one JSON report on stdout. Exit codes: 0 success,
2 input error, 3 size cap exceeded, 4 certificate verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .errors import CapExceeded, GraphError, GraphFormatError, VerificationError
from .families import named
from .graph import Graph
from .io import from_graph6, read_graph6_lines, read_graphs, to_graph6

EXIT_OK, EXIT_INPUT, EXIT_CAP, EXIT_VERIFY = 0, 2, 3, 4


def _round(obj):
    """Floats at 12 significant digits, recursively."""
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return str(obj)
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def load_input(source: str) -> tuple[str, list[Graph]]:
    """A file (graph6 or edge list), ``-`` for stdin, a family tag, or a
    graph6 string."""
    if source == "-":
        return "stdin", list(read_graphs(sys.stdin.read()))
    path = Path(source)
    if path.is_file():
        return f"file:{source}", list(read_graphs(path.read_text()))
    try:
        return f"named:{source}", [named(source)]
    except GraphError:
        pass
    try:
        return f"graph6:{source}", [from_graph6(source)]
    except GraphFormatError:
        raise GraphFormatError(f"{source!r} is neither a file, a known graph name nor a graph6 string") from None


def _labels(g: Graph, vs) -> list[str]:
    return g.names(vs)


def analyze_graph(g: Graph, taus: list[float]) -> dict:
    from .oracle import STABLE_CAP, alpha, cap
    from .qp import alpha_lower_bounds, hoffman_bound, solve_p_tau, upsilon_solution
    from .spectra import eigen_sym, exact_lambda_min

    out: dict = {"graph6": to_graph6(g), "n": g.n, "m": g.m}
    sp = eigen_sym(g)
    lam, k = exact_lambda_min(g) if g.m else (0.0, None)
    out["spectrum"] = {
        "lambda_max": sp.lambda_max,
        "lambda_min": lam,
        "lambda_min_integer": k,
        "distinct": [[v, mlt] for v, mlt in sp.distinct()],
    }
    sol = upsilon_solution(g)
    out["upsilon"] = sol.value
    out["x_star"] = list(sol.x_star)
    out["upsilon_tau"] = []
    for tau in taus:
        s = solve_p_tau(g, tau, exact_small=g.n <= 16)
        out["upsilon_tau"].append(
            {"tau": tau, "value": s.value, "x_star": list(s.x_star), "certified": s.global_certified}
        )
    if g.m and g.is_regular():
        out["hoffman"] = hoffman_bound(g)
    if g.m:
        lb1, lb2 = alpha_lower_bounds(g, sol.tau, sol)
        out["lower_bounds"] = {"tau": sol.tau, "lb1": lb1, "lb2": lb2}
    if g.n <= cap(STABLE_CAP):
        out["alpha"] = alpha(g)
    else:
        out["notices"] = [f"alpha skipped: n={g.n} exceeds the oracle cap"]
    return out


def _verify_verdict(g: Graph, verdict) -> None:
    from .qp import luz_condition

    cert = verdict.certificate or {}
    if verdict.status == "Q" and cert.get("kind") == "stable-set":
        s = [g.index(x) for x in cert["set"]]
        if not luz_condition(g, s):
            raise VerificationError("stable-set certificate fails the eigenvalue condition")
    if verdict.verification_failed:
        raise VerificationError("no maximum stable set satisfies the eigenvalue condition")


def recognize_graph(g: Graph, method: str) -> dict:
    from .qp import luz_condition, upsilon

    if method == "rules":
        from .recognition import recognize

        v = recognize(g)
        _verify_verdict(g, v)
        return {"graph6": to_graph6(g), **v.to_json()}
    if method == "star":
        from .recognition import star_set_witness

        X = star_set_witness(g)
        return {
            "graph6": to_graph6(g),
            "status": "Q" if X is not None else "NotQ",
            "upsilon": upsilon(g),
            "star_set": None if X is None else _labels(g, X),
        }
    from .oracle import alpha
    from .recognition import _stable_certificate

    a, u = alpha(g), upsilon(g)
    ok = abs(u - a) <= 1e-6
    res = {"graph6": to_graph6(g), "status": "Q" if ok else "NotQ", "alpha": a, "upsilon": u, "certificate": None}
    if ok:
        s = _stable_certificate(g)
        if s is None or not luz_condition(g, s):
            raise VerificationError("oracle Q verdict without a certifying stable set")
        res["certificate"] = {"kind": "stable-set", "set": _labels(g, s), "luz": True}
    return res


def regular_set_graph(g: Graph, kappa: int, tau: int, trace: bool) -> dict:
    from .oracle import verify_kt_regular
    from .regular import kt_linear_system, search_regular_set

    sol = kt_linear_system(g, kappa, tau)
    res = search_regular_set(g, kappa, tau, trace=trace)
    out = {
        "graph6": to_graph6(g),
        "kappa": kappa,
        "tau": tau,
        "lambda": sol.lam,
        "consistent": sol.consistent,
        "nullspace_dim": len(sol.nullspace),
        "cardinality": res.cardinality,
        "method": res.method,
        "exhausted": res.exhausted,
        "certificate": None,
    }
    if res.certificate is not None:
        if not verify_kt_regular(g, res.certificate.set, kappa, tau):
            raise VerificationError("regular-set certificate fails the definition check")
        out["certificate"] = _labels(g, res.certificate.set)
    if trace:
        out["trace"] = list(res.trace)
    return out


def _scan_one(item):
    line_no, g6 = item
    from .recognition import recognize

    g = from_graph6(g6)
    v = recognize(g)
    _verify_verdict(g, v)
    return {"line": line_no, "graph6": g6, "status": v.status, "adverse": v.adverse_subgraph is not None}


def _conj_one(item):
    line_no, g6 = item
    from .oracle import is_q_graph_oracle
    from .recognition import is_adverse

    g = from_graph6(g6)
    if g.n == 0 or g.isolated_vertices() or not is_adverse(g):
        return {"line": line_no, "graph6": g6, "adverse": False}
    try:
        q = is_q_graph_oracle(g)
    except CapExceeded as exc:
        return {"line": line_no, "graph6": g6, "adverse": True, "skipped": str(exc)}
    return {"line": line_no, "graph6": g6, "adverse": True, "q": q}


def scan_stream(lines, conjecture: bool, jobs: int) -> dict:
    items, malformed = [], 0
    for line_no, g, raw in read_graph6_lines(lines):
        if g is None:
            malformed += 1
        else:
            items.append((line_no, to_graph6(g)))
    fn = _conj_one if conjecture else _scan_one
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(fn, items, chunksize=max(1, len(items) // (8 * jobs))))
    else:
        results = [fn(it) for it in items]
    if conjecture:
        adverse = [r for r in results if r["adverse"]]
        return {
            "mode": "conjecture",
            "scanned": len(items),
            "malformed": malformed,
            "adverse": len(adverse),
            "skipped": sum(1 for r in adverse if "skipped" in r),
            "counterexamples": [r["graph6"] for r in adverse if r.get("q") is False],
            "adverse_graphs": [r["graph6"] for r in adverse],
        }
    counts = {"Q": 0, "NotQ": 0, "Undetermined": 0, "adverse": 0}
    for r in results:
        counts[r["status"]] += 1
        counts["adverse"] += r["adverse"]
    return {"mode": "rules", "scanned": len(items), "malformed": malformed, "counts": counts, "results": results}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qstab", description="Convex quadratic bounds on the stability number.")
    p.add_argument("--version", action="version", version=f"qstab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="spectrum, upsilon, bounds and alpha")
    a.add_argument("input")
    a.add_argument("--tau", type=float, action="append", default=[], help="extra tau values (repeatable)")

    r = sub.add_parser("recognize", help="decide whether alpha equals the convex bound")
    r.add_argument("input")
    r.add_argument("--method", choices=("rules", "star", "oracle"), default="rules")

    k = sub.add_parser("regular-set", help="search for a (kappa, tau)-regular set")
    k.add_argument("input")
    k.add_argument("--kappa", type=int, required=True)
    k.add_argument("--tau", type=int, required=True)
    k.add_argument("--trace", action="store_true", help="include the tableau sequence")

    s = sub.add_parser("scan", help="batch recognition over a graph6 stream")
    s.add_argument("input", nargs="?", default="-")
    s.add_argument("--conjecture", action="store_true", help="check adverse graphs against the oracle")
    s.add_argument("--jobs", type=int, default=1)
    return p


def _run(args) -> dict:
    if args.command == "scan":
        if args.input == "-":
            desc, lines = "stdin", sys.stdin.read().splitlines()
        else:
            desc, lines = f"file:{args.input}", Path(args.input).read_text().splitlines()
        return {"input": desc, **scan_stream(lines, args.conjecture, max(1, args.jobs))}
    desc, graphs = load_input(args.input)
    if args.command == "analyze":
        results = [analyze_graph(g, args.tau) for g in graphs]
    elif args.command == "recognize":
        results = [recognize_graph(g, args.method) for g in graphs]
    else:
        results = [regular_set_graph(g, args.kappa, args.tau, args.trace) for g in graphs]
        if args.trace:
            for res in results:
                for block in res.get("trace", []):
                    print(block, file=sys.stderr)
    return {"input": desc, "results": results}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        body = _run(args)
    except (GraphFormatError, GraphError, ValueError, OSError) as exc:
        print(f"qstab: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as exc:
        print(f"qstab: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except VerificationError as exc:
        print(f"qstab: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    report = {"tool": "qstab", "version": __version__, "command": args.command, **body}
    report["timing"] = {"seconds": time.perf_counter() - start}
    json.dump(_round(report), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
