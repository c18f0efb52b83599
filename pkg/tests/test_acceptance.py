"""The ten acceptance criteria, one test each.

Every test records a PASS/FAIL line that the terminal summary prints.
"""

import functools
from fractions import Fraction

import numpy as np
from qstab import corpus, families
from qstab.oracle import (
    alpha,
    find_kt_regular,
    has_perfect_matching,
    is_q_graph_oracle,
    max_stable_set,
    verify_kt_regular,
)
from qstab.qp import (
    alpha_lower_bounds,
    exact_upsilon_small,
    hoffman_bound,
    luz_condition,
    solve_p_tau,
    solve_q_tau,
    upsilon,
)
from qstab.recognition import conjecture_scan, is_adverse, recognize
from qstab.regular import cardinality_test, kt_linear_system, solve_01, thompson_verify
from qstab.spectra import exact_lambda_min, integer_eigen_check
from qstab.star import find_star_set, gomory_search, initial_tableau, pivot, reduced_system, star_set_from

from conftest import ACCEPTANCE, random_graph


def criterion(k):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kw):
            try:
                ok, text = fn(*args, **kw)
            except Exception as exc:
                ACCEPTANCE[k] = (False, f"raised {type(exc).__name__}: {exc}")
                raise
            ACCEPTANCE[k] = (ok, text)
            print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {text}")
            assert ok, text

        return run

    return wrap


@criterion(1)
def test_c1_petersen_suite():
    g = families.petersen()
    names = lambda vs: g.vertex_set([str(v) for v in vs])
    s1, s2, s3 = names([1, 2, 3, 4]), names(range(5, 11)), names([1, 2, 5, 7, 8])
    ups = upsilon(g)
    checks = {
        "upsilon": abs(ups - 4) <= 1e-6,
        "alpha": alpha(g) == 4,
        "hoffman": hoffman_bound(g) == 4 and exact_lambda_min(g)[1] == -2 and g.degree(0) == 3,
        "adverse": is_adverse(g),
        "recognize": recognize(g).status == "Q",
        "sets": verify_kt_regular(g, s1, 0, 2) and verify_kt_regular(g, s2, 1, 3) and verify_kt_regular(g, s3, 2, 1),
        "cardinality": cardinality_test(kt_linear_system(g, 0, 2)) == 4
        and cardinality_test(kt_linear_system(g, 1, 3)) == 6,
    }
    bad = [k for k, v in checks.items() if not v]
    return not bad, f"petersen upsilon={ups:.9f}, failed checks: {bad or 'none'}"


@criterion(2)
def test_c2_tableau_regression():
    g = families.example7()
    t = initial_tableau(reduced_system(g, star_set_from(g, -2, g.vertex_set("ad")), 2))
    F = Fraction
    body_ok = t.body == tuple(tuple(F(v) for v in r) for r in ((1, 0), (0, 1), (0, 1), (1, 0), (-1, -1)))
    rhs_ok = t.rhs == tuple(F(v) for v in (1, 1, 1, 1, -1))
    labels_ok = g.names(t.basis) == list("bcefg") and g.names(t.nonbasic) == list("ad")
    s1 = pivot(t, g.index("g"), g.index("d")).support()
    s2 = pivot(t, g.index("g"), g.index("a")).support()
    sup_ok = set(g.names(s1)) == set("bdf") and set(g.names(s2)) == set("ace")
    reg_ok = verify_kt_regular(g, s1, 0, 2) and verify_kt_regular(g, s2, 0, 2)
    ok = body_ok and rhs_ok and labels_ok and sup_ok and reg_ok
    return ok, f"tableau body={body_ok} rhs={rhs_ok} supports {sorted(g.names(s1))}, {sorted(g.names(s2))}"


@criterion(3)
def test_c3_fig2_fixture():
    g = families.fig2()
    a, u2 = alpha(g), solve_p_tau(g, 2).value
    lam_ok = exact_lambda_min(g)[1] == -2 and integer_eigen_check(g, -2).is_eigenvalue
    reg = g.is_regular() and g.degree(0) == 3
    s_ok = verify_kt_regular(g, g.vertex_set("abde"), 0, 2)
    ok = a == 4 and abs(u2 - 4) <= 1e-6 and lam_ok and reg and s_ok
    return ok, f"alpha={a}, upsilon_G(2)={u2:.9f}, 3-regular={reg}, lambda_min=-2 exact={lam_ok}"


@criterion(4)
def test_c4_motzkin_straus():
    checked = cliques = 0
    bad = []
    for g in corpus.graphs_upto(7):
        if g.m == 0:
            continue
        a = alpha(g)
        checked += 1
        if exact_upsilon_small(g, 1) != a:
            bad.append(g)
        # tau = 1 lies in the convex regime only when lambda_min >= -1: disjoint unions of cliques
        if exact_lambda_min(g)[0] >= -1 - 1e-9:
            cliques += 1
            if abs(solve_q_tau(g, 1).nu - Fraction(1, a)) > 1e-6:
                bad.append(g)
    return not bad, f"{checked} graphs exact, {cliques} clique unions via the solver, {len(bad)} violations"


def _luz_holds(g):
    return any(luz_condition(g, s) for s in max_stable_set(g, all_maximum=True).all_maximum)


@criterion(5)
def test_c5_characterization_sweep():
    checked, bad = 0, []
    for g in corpus.graphs_upto(8):
        if g.m == 0:
            continue
        checked += 1
        if (abs(upsilon(g) - alpha(g)) <= 1e-6) != _luz_holds(g):
            bad.append(g)
    return not bad, f"{checked} graphs (exhaustive up to order 8), {len(bad)} violations"


@criterion(6)
def test_c6_monotone_and_sandwich():
    rng = np.random.default_rng(20240611)
    done, bad = 0, []
    while done < 1000:
        n = int(rng.integers(2, 13))
        g = random_graph(rng, n, float(rng.uniform(0.15, 0.85)))
        if g.m == 0:
            continue
        done += 1
        a = alpha(g)
        t0 = -exact_lambda_min(g)[0]
        taus = [t0 * f for f in (1.0, 1.3, 1.7, 2.5, 4.0)]
        sols = [solve_p_tau(g, t) for t in taus]
        vals = [s.value for s in sols]
        U = [v for v in range(n) if rng.random() < 0.3] or [0]
        h = g.delete_vertices(U)
        ok = all(x <= y + 1e-7 for x, y in zip(vals, vals[1:]))
        ok &= all(a <= v + 1e-6 for v in vals)
        for t, s in zip(taus, sols):
            hv = solve_p_tau(h, t).value if h.n else 0.0
            ok &= hv <= s.value + 1e-7
            lb1, lb2 = alpha_lower_bounds(g, t, s)
            ok &= lb1 <= a + 1e-6 and lb2 <= a + 1e-6
        if not ok:
            bad.append(g)
    return not bad, f"{done} random graphs x 5 tau values, {len(bad)} violations"


def _is_star(g):
    return g.m == g.n - 1 and g.max_degree == g.n - 1


@criterion(7)
def test_c7_line_graph_theorem():
    checked, bad = 0, []
    for g in corpus.graphs_upto(7, connected=True, min_order=4):
        if _is_star(g):
            continue
        checked += 1
        if has_perfect_matching(g) != is_q_graph_oracle(g.line_graph()):
            bad.append(g)
    return not bad, f"{checked} connected graphs of order 4..7, {len(bad)} violations"


@criterion(8)
def test_c8_regular_set_equivalence():
    pairs = [(k, t) for k in (0, 1, 2) for t in (1, 2, 3)]
    runs = thompson_subsets = 0
    bad = []
    for g in corpus.graphs_upto(8):
        for kappa, tau in pairs:
            runs += 1
            if (solve_01(g, kappa, tau) is None) != (find_kt_regular(g, kappa, tau) is None):
                bad.append((g, kappa, tau))
        if g.m and g.is_regular():
            for mask in range(1, 1 << g.n):
                s = [v for v in range(g.n) if mask >> v & 1]
                thompson_subsets += 1
                for kappa, tau in pairs:
                    if thompson_verify(g, s, kappa, tau) != verify_kt_regular(g, s, kappa, tau):
                        bad.append((g, kappa, tau, mask))
    return not bad, f"{runs} solve_01 runs, {thompson_subsets} subsets under the eigenvector check, {len(bad)} disagreements"


@criterion(9)
def test_c9_gomory_on_adverse_graphs():
    pool = [g for g in corpus.graphs_upto(8, connected=True, min_order=2) if is_adverse(g)]
    adverse_small = len(pool)
    pool.append(families.petersen())
    bad = []
    for g in pool:
        k = exact_lambda_min(g)[1]
        res = gomory_search(reduced_system(g, find_star_set(g, k), -k))
        if res.status != "found" or not verify_kt_regular(g, res.solution, 0, -k):
            bad.append(g)
    rep = conjecture_scan(corpus.graphs_upto(8, connected=True, min_order=2))
    rep_p = conjecture_scan([families.petersen()])
    # the conjecture check is informational; only the search result gates this criterion
    text = (
        f"{adverse_small} adverse graphs up to order 8 plus petersen, {len(bad)} search failures; "
        f"conjecture scan: {rep.scanned + rep_p.scanned} scanned, "
        f"{len(rep.counterexamples) + len(rep_p.counterexamples)} counterexamples"
    )
    return not bad, text


@criterion(10)
def test_c10_recognition_soundness():
    checked, bad, undetermined, bip_und = 0, [], 0, 0
    for g in corpus.graphs_upto(8):
        checked += 1
        v = recognize(g)
        q = is_q_graph_oracle(g)
        if (v.status == "Q" and not q) or (v.status == "NotQ" and q):
            bad.append(g)
        if v.status == "Undetermined":
            undetermined += 1
            bip_und += g.is_bipartite()
    ok = not bad and bip_und == 0
    return ok, f"{checked} graphs, {len(bad)} contradictions, {undetermined} undetermined ({bip_und} bipartite)"
