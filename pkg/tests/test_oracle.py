from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given

from qstab import corpus, families
from qstab.errors import CapExceeded
from qstab.oracle import (
    all_kt_regular,
    alpha,
    clique_number,
    find_kt_regular,
    has_perfect_matching,
    is_q_graph_oracle,
    max_stable_set,
    verify_kt_regular,
)
from qstab.recognition import _values
from qstab.spectra import integer_eigen_check

from conftest import graphs


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def brute_stable(g):
    for r in range(g.n, -1, -1):
        hits = [set(s) for s in combinations(range(g.n), r) if g.is_stable(s)]
        if hits:
            return r, hits
    return 0, [set()]


def brute_kt(g, kappa, tau):
    out = []
    for r in range(1, g.n + 1):
        for s in combinations(range(g.n), r):
            s = set(s)
            ok = all(
                sum(1 for w in g.neighbors(v) if w in s) == (kappa if v in s else tau) for v in range(g.n)
            )
            if ok:
                out.append(frozenset(s))
    return out


def test_examples(petersen, fig2):
    assert max_stable_set(petersen).alpha == 4
    assert alpha(families.cycle(5)) == 2
    res = max_stable_set(fig2, all_maximum=True)
    assert res.alpha == 4 and fig2.vertex_set("abde") in res.all_maximum
    assert clique_number(families.complete(5)) == 5
    assert clique_number(petersen) == 2
    assert clique_number(families.cycle(5)) == 2


@given(graphs(min_n=0, max_n=10))
def test_stable_sets_match_brute_force(g):
    r, hits = brute_stable(g)
    res = max_stable_set(g, all_maximum=True)
    assert res.alpha == r
    assert g.is_stable(res.witness) and len(res.witness) == r
    assert sorted(map(sorted, res.all_maximum)) == sorted(map(sorted, hits))


@given(graphs(min_n=1, max_n=12))
def test_clique_number_matches_networkx(g):
    expected = max(len(c) for c in nx.find_cliques(to_nx(g)))
    assert clique_number(g) == expected


def test_petersen_sets(petersen):
    names = lambda xs: petersen.vertex_set([str(x) for x in xs])
    assert verify_kt_regular(petersen, names([1, 2, 3, 4]), 0, 2)
    assert verify_kt_regular(petersen, names(range(5, 11)), 1, 3)
    assert verify_kt_regular(petersen, names([1, 2, 5, 7, 8]), 2, 1)
    assert not verify_kt_regular(petersen, names([1, 2, 3]), 0, 2)


def test_find_kt_examples(petersen, example7):
    cert = find_kt_regular(petersen, 0, 2)
    assert cert is not None and cert.set in max_stable_set(petersen, all_maximum=True).all_maximum
    cert = find_kt_regular(example7, 0, 2)
    assert cert.set in (example7.vertex_set("bdf"), example7.vertex_set("ace"))
    assert find_kt_regular(families.cycle(5), 0, 2) is None
    assert len(all_kt_regular(petersen, 0, 2)) == 5


@given(graphs(min_n=1, max_n=8), st_k := __import__("hypothesis").strategies.integers(0, 2), __import__("hypothesis").strategies.integers(1, 3))
def test_kt_search_matches_brute_force(g, kappa, tau):
    expected = brute_kt(g, kappa, tau)
    assert sorted(map(sorted, all_kt_regular(g, kappa, tau))) == sorted(map(sorted, expected))
    assert (find_kt_regular(g, kappa, tau) is None) == (not expected)


def test_dfs_and_vector_searches_agree():
    from qstab.oracle import _dfs_search, _vector_search

    for g in corpus.graphs(6):
        for kappa, tau in [(0, 1), (0, 2), (1, 2), (2, 1)]:
            assert sorted(_dfs_search(g, kappa, tau, False)) == sorted(_vector_search(g, kappa, tau, False))


def test_caps(monkeypatch):
    monkeypatch.setenv("QSTAB_ORACLE_CAP", "5")
    with pytest.raises(CapExceeded):
        alpha(families.cycle(6))
    monkeypatch.delenv("QSTAB_ORACLE_CAP")
    with pytest.raises(CapExceeded):
        has_perfect_matching(families.cycle(26))


def test_matching_examples(petersen):
    assert has_perfect_matching(families.complete(2))
    assert has_perfect_matching(families.cycle(6))
    assert not has_perfect_matching(families.cycle(5))
    assert has_perfect_matching(petersen)


@given(graphs(min_n=0, max_n=12))
def test_matching_matches_networkx(g):
    m = nx.max_weight_matching(to_nx(g), maxcardinality=True)
    assert has_perfect_matching(g) == (2 * len(m) == g.n)


def test_q_oracle_examples(petersen):
    assert is_q_graph_oracle(petersen)
    assert not is_q_graph_oracle(families.cycle(5))
    assert is_q_graph_oracle(families.cycle(6).line_graph())


def test_line_graph_of_line_graph_is_q():
    for g in corpus.graphs_upto(6, connected=True, min_order=2):
        if g.m % 2 == 0 and g.m <= 10:
            assert is_q_graph_oracle(g.line_graph().line_graph())


def test_alpha_redundant_subgraphs_stay_q():
    for g in corpus.graphs_upto(7):
        if g.m == 0 or not is_q_graph_oracle(g):
            continue
        a = alpha(g)
        for mask in range(1, 1 << g.n):
            sub = g.delete_vertices([v for v in range(g.n) if mask >> v & 1])
            if sub.n == 0 or alpha(sub) != a:
                continue
            su = _values(sub)[0]
            assert abs(su - a) <= 1e-6


def test_regular_set_forces_eigenvalue():
    for g in corpus.graphs_upto(8):
        if not g.is_regular() or g.m == 0:
            continue
        for kappa in range(0, 3):
            for tau in range(1, 4):
                # V itself is vacuously regular and carries no spectral information
                proper = [s for s in all_kt_regular(g, kappa, tau) if len(s) < g.n]
                if proper:
                    assert integer_eigen_check(g, kappa - tau).is_eigenvalue
