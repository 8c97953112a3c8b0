import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_chromatic, brute_max_clique, reference_dsatur_chromatic, truth_table_sat
from qcsp.classical import (
    BACKEND,
    dsatur,
    dsatur_simplified,
    get_kernels,
    greedy_clique,
    is_proper_colouring,
    sat_backtrack,
    variable_order,
)
from qcsp.instances import CnfFormula, Graph, gen_gnp, gen_ksat

BACKENDS = ["python"] + (["cython"] if BACKEND == "cython" else [])


def complete(n):
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def is_clique(g, vs):
    adj = g.adjacency()
    return all(b in adj[a] for a, b in itertools.combinations(vs, 2))


def test_greedy_clique_examples():
    assert len(greedy_clique(complete(4))) == 4
    assert len(greedy_clique(Graph(5, frozenset()))) == 1
    assert len(greedy_clique(petersen())) == brute_max_clique(10, petersen().edges) == 2


@given(st.integers(1, 12), st.floats(0, 1), st.integers(0, 10**6))
@settings(max_examples=50, deadline=None)
def test_greedy_clique_is_clique(n, p, seed):
    g = gen_gnp(n, p, seed)
    assert is_clique(g, greedy_clique(g))


@pytest.mark.parametrize("backend", BACKENDS)
def test_small_chromatic(backend):
    assert dsatur(complete(3), backend=backend).chromatic == 3
    assert dsatur(cycle(5), backend=backend).chromatic == 3
    assert dsatur(cycle(6), backend=backend).chromatic == 2
    assert dsatur(petersen(), backend=backend).chromatic == 3
    assert dsatur(Graph(0, frozenset()), backend=backend).chromatic == 0


@pytest.mark.parametrize("backend", BACKENDS)
def test_k_mode(backend):
    assert dsatur(complete(3), "k", 3, backend=backend).colourable
    assert not dsatur(complete(3), "k", 2, backend=backend).colourable
    assert dsatur_simplified(complete(3), 3, backend=backend).colourable


def test_clique_exceeds_k_short_circuits():
    r = dsatur(complete(5), "k", 3)
    assert r.colourable is False
    assert r.stats.nodes == 1


def test_chromatic_matches_oracles():
    for s in range(120):
        n = 1 + s % 8
        g = gen_gnp(n, 0.5, seed=s, index=1)
        chi = brute_chromatic(n, g.edges)
        assert dsatur(g).chromatic == chi
        assert reference_dsatur_chromatic(n, g.edges) == chi


@pytest.mark.parametrize("backend", BACKENDS)
def test_witness_is_proper(backend):
    for s in range(30):
        g = gen_gnp(14, 0.5, seed=s)
        r = dsatur(g, backend=backend)
        assert is_proper_colouring(g, r.stats.witness)
        assert max(r.stats.witness) == r.chromatic


def test_colourability_monotone_and_tight():
    for s in range(30):
        g = gen_gnp(16, 0.5, seed=s, index=4)
        chi = dsatur(g).chromatic
        assert dsatur(g, "k", chi).colourable
        assert dsatur(g, "k", chi + 1).colourable
        assert not dsatur(g, "k", chi - 1).colourable
        assert not dsatur_simplified(g, chi - 1).colourable


def test_simplified_ratio_bounded():
    for s in range(40):
        n = 10 + s % 20
        g = gen_gnp(n, 0.5, seed=s, index=9)
        chi = dsatur(g).chromatic
        k = chi - 1
        opt = dsatur(g, "k", k).stats.nodes
        simp = dsatur_simplified(g, k).stats.nodes
        assert opt <= simp <= (k + 1) * opt


def test_backends_agree_on_node_counts():
    if BACKEND != "cython":
        pytest.skip("compiled kernels not built")
    for s in range(20):
        g = gen_gnp(20, 0.5, seed=s)
        for mode, k in (("chromatic", None), ("k", 4)):
            a = dsatur(g, mode, k, backend="python")
            b = dsatur(g, mode, k, backend="cython")
            assert a.stats == b.stats
        f = gen_ksat(16, 3, 68, seed=s)
        assert sat_backtrack(f, backend="python") == sat_backtrack(f, backend="cython")


def test_dsatur_deterministic():
    g = gen_gnp(25, 0.5, seed=3)
    assert dsatur(g).stats == dsatur(g).stats


def test_node_limit_aborts():
    g = gen_gnp(40, 0.5, seed=1)
    r = dsatur(g, node_limit=5)
    assert r.stats.aborted
    assert r.chromatic is None


def test_sat_examples():
    ok, st_ = sat_backtrack(CnfFormula(0, 0, ()))
    assert ok and st_.nodes == 1
    ok, st_ = sat_backtrack(CnfFormula(2, 2, ((1, 2), (-1, 2))))
    assert ok
    assert CnfFormula(2, 2, ((1, 2), (-1, 2))).evaluate(st_.witness)
    ok, _ = sat_backtrack(CnfFormula(1, 1, ((1,), (-1,))))
    assert not ok


@pytest.mark.parametrize("backend", BACKENDS)
def test_sat_matches_truth_table(backend):
    for s in range(150):
        n = 3 + s % 10
        m = int(4.27 * n)
        f = gen_ksat(n, 3, m, seed=s, index=2)
        ok, stats = sat_backtrack(f, backend=backend)
        assert ok == truth_table_sat(n, f.clauses)
        if ok:
            assert f.evaluate(stats.witness)


def test_variable_order_by_appearance():
    f = CnfFormula(4, 2, ((1, 2), (2, 3), (2, -4), (3, 4)))
    order = variable_order(f)
    counts = f.appearance_counts()
    assert [counts[v] for v in order] == sorted(counts, reverse=True)


def test_kernels_selectable():
    assert get_kernels("python").__name__.endswith("_pykernels")
    with pytest.raises(ValueError):
        get_kernels("fortran")


def test_tree_stats_invariants():
    from qcsp.classical import TreeStats

    with pytest.raises(ValueError):
        TreeStats(0, False)
    with pytest.raises(ValueError):
        TreeStats(1, True, None)
    assert np.int64(TreeStats(3, False).nodes) == 3
