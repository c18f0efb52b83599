from itertools import combinations

import pytest

from qstab import corpus, exact, families
from qstab.errors import NotAnEigenvalueError
from qstab.oracle import all_kt_regular, find_kt_regular, verify_kt_regular
from qstab.spectra import exact_lambda_min
from qstab.star import (
    count_star_partitions,
    enumerate_basic_solutions,
    find_star_partition,
    find_star_set,
    gomory_search,
    initial_tableau,
    is_star_set,
    pivot,
    reduced_system,
    star_set_from,
)


def ex_system(g):
    return reduced_system(g, star_set_from(g, -2, g.vertex_set("ad")), 2)


def test_find_star_set_examples(petersen, example7):
    st = find_star_set(example7, -2)
    assert len(st.X) == 2 and is_star_set(example7, -2, st.X)
    assert is_star_set(example7, -2, example7.vertex_set("ad"))
    st = find_star_set(petersen, -2)
    assert len(st.X) == 4
    rest = [v for v in range(10) if v not in st.X]
    assert exact.bareiss_det([[petersen.has_edge(u, v) + 2 * (u == v) for v in rest] for u in rest]) != 0
    assert len(find_star_set(families.complete(2), -1).X) == 1
    with pytest.raises(NotAnEigenvalueError):
        find_star_set(families.cycle(5), -2)
    with pytest.raises(ValueError):
        star_set_from(example7, -2, example7.vertex_set("ab"))


def test_star_partition_examples(petersen, example7):
    parts = find_star_partition(example7)
    assert sorted(len(p.X) for p in parts) == [1, 1, 1, 2, 2]
    assert sorted(v for p in parts for v in p.X) == list(range(7))
    assert {p.eigenvalue for p in parts} == {-2, 1, -1, 0, 3}
    parts = find_star_partition(families.complete(2))
    assert sorted(len(p.X) for p in parts) == [1, 1]
    parts = find_star_partition(petersen)
    assert sorted((p.eigenvalue, len(p.X)) for p in parts) == [(-2, 4), (1, 5), (3, 1)]
    assert count_star_partitions(petersen) == 750


def test_documented_partition_is_valid(example7):
    g = example7
    for lam, xs in [(-2, "ad"), (1, "bc"), (3, "e"), (-1, "f"), (0, "g")]:
        assert is_star_set(g, lam, g.vertex_set(xs))


def test_every_graph_has_a_star_partition():
    for g in corpus.graphs_upto(6):
        parts = find_star_partition(g)
        assert sorted(v for p in parts for v in p.X) == list(range(g.n))


def test_reduced_system_shapes(petersen, example7):
    sys = ex_system(example7)
    assert len(sys.rows) == 5 and len(sys.rows[0]) == 7
    sys = reduced_system(petersen, find_star_set(petersen, -2), 2)
    assert len(sys.rows) == 6 and len(sys.rows[0]) == 10
    k2 = families.complete(2)
    sys = reduced_system(k2, star_set_from(k2, -1, [0]), 1)
    assert sys.rows == ((1, 1),) and sys.rhs == (1,)
    with pytest.raises(ValueError):
        reduced_system(petersen, find_star_set(petersen, -2), 3)


def test_reduced_system_has_the_same_solutions():
    # a 0-1 vector solves the full system iff it solves the reduced one
    for g in [families.example7(), families.petersen(), families.cycle(4), families.fig2()]:
        k = exact_lambda_min(g)[1]
        sys = reduced_system(g, find_star_set(g, k), -k)
        full = exact.shifted_adjacency(g, k)
        for r in range(g.n + 1):
            for s in combinations(range(g.n), r):
                x = [int(v in s) for v in range(g.n)]
                a = all(v == -k for v in exact.matvec(full, x))
                b = all(v == 0 for v in sys.residual(x))
                assert a == b


def test_initial_tableau_values(example7):
    t = initial_tableau(ex_system(example7))
    g = example7
    assert [g.label(v) for v in t.basis] == list("bcefg")
    assert [g.label(v) for v in t.nonbasic] == list("ad")
    assert t.body == ((1, 0), (0, 1), (0, 1), (1, 0), (-1, -1))
    assert t.rhs == (1, 1, 1, 1, -1)
    assert sum(t.rhs) == 3
    k2 = families.complete(2)
    t = initial_tableau(reduced_system(k2, star_set_from(k2, -1, [1]), 1))
    assert t.body == ((1,),) and t.rhs == (1,)


def test_two_pivots(example7):
    g = example7
    t = initial_tableau(ex_system(g))
    ix = g.index
    t1 = pivot(t, ix("g"), ix("d"))
    assert [g.label(v) for v in t1.basis] == list("bcefd")
    assert t1.rhs == (1, 0, 0, 1, 1)
    assert set(g.names(t1.support())) == set("bdf")
    assert t1.row(ix("d")) == (1, -1)
    # column of the leaving variable after the exchange
    assert t1.column(ix("g")) == (0, 1, 1, 0, -1)
    t2 = pivot(t, ix("g"), ix("a"))
    assert t2.rhs == (0, 1, 1, 0, 1)
    assert set(g.names(t2.support())) == set("ace")
    assert t2.row(ix("a")) == (-1, 1)
    for s in (t1.support(), t2.support()):
        assert verify_kt_regular(g, s, 0, 2)


def test_pivot_is_an_involution_and_preserves_solutions(example7):
    g = example7
    sys = ex_system(g)
    t = initial_tableau(sys)
    t1 = pivot(t, g.index("g"), g.index("d"))
    assert pivot(t1, g.index("d"), g.index("g")) == t
    for tab in (t, t1):
        assert all(r == 0 for r in sys.residual(tab.solution()))
    with pytest.raises(ZeroDivisionError):
        pivot(t, g.index("b"), g.index("d"))


def test_render_layout(example7):
    text = initial_tableau(ex_system(example7)).render()
    lines = text.splitlines()
    assert "x_a" in lines[0] and "x_d" in lines[0]
    assert lines[-1].startswith("x_g") and lines[-1].rstrip().endswith("-1")


def test_enumerate_basic_solutions(petersen, example7):
    res = enumerate_basic_solutions(ex_system(example7))
    assert res.complete
    sets = res.zero_one_sets()
    assert example7.vertex_set("bdf") in sets and example7.vertex_set("ace") in sets
    sys = reduced_system(petersen, find_star_set(petersen, -2), 2)
    sets = enumerate_basic_solutions(sys).zero_one_sets()
    assert sorted(map(sorted, sets)) == sorted(map(sorted, all_kt_regular(petersen, 0, 2)))
    c4 = families.cycle(4)
    sets = enumerate_basic_solutions(reduced_system(c4, find_star_set(c4, -2), 2)).zero_one_sets()
    assert sorted(map(sorted, sets)) == [[0, 2], [1, 3]]
    for sol in enumerate_basic_solutions(sys).solutions:
        assert all(v >= 0 for v in sol.x) and all(r == 0 for r in sys.residual(sol.x))
    assert not enumerate_basic_solutions(sys, limit=3).complete


def test_gomory_examples(petersen, example7):
    res = gomory_search(ex_system(example7))
    assert res.status == "found"
    assert res.solution in (example7.vertex_set("bdf"), example7.vertex_set("ace"))
    res = gomory_search(reduced_system(petersen, find_star_set(petersen, -2), 2))
    assert res.status == "found" and len(res.solution) == 4
    assert verify_kt_regular(petersen, res.solution, 0, 2)


def test_gomory_rejects_fractional_cardinality():
    found = 0
    for g in corpus.graphs_upto(7):
        k = exact_lambda_min(g)[1] if g.m else None
        if k is None:
            continue
        sys = reduced_system(g, find_star_set(g, k), -k)
        t = initial_tableau(sys)
        if sys.consistent and sum(t.rhs).denominator != 1:
            res = gomory_search(sys)
            assert res.status == "infeasible" and res.pivots == 0
            found += 1
    assert found > 0


def test_gomory_agrees_with_oracle_on_small_graphs():
    for g in corpus.graphs_upto(8):
        if g.m == 0:
            continue
        k = exact_lambda_min(g)[1]
        if k is None:
            continue
        res = gomory_search(reduced_system(g, find_star_set(g, k), -k), max_pivots=100_000)
        assert res.status != "inconclusive"
        expected = find_kt_regular(g, 0, -k) is not None
        assert (res.status == "found") == expected
        if res.solution is not None:
            assert verify_kt_regular(g, res.solution, 0, -k)


def test_gomory_trace(example7):
    res = gomory_search(ex_system(example7), trace=True)
    assert res.trace and res.trace[0].startswith("initial tableau")


def test_gomory_cap_gives_inconclusive():
    for g in corpus.graphs_upto(7):
        if g.m == 0:
            continue
        k = exact_lambda_min(g)[1]
        if k is None:
            continue
        sys = reduced_system(g, find_star_set(g, k), -k)
        full = gomory_search(sys)
        if full.pivots > 0:
            assert gomory_search(sys, max_pivots=0).status == "inconclusive"
            return
    pytest.fail("no instance needing a pivot")
