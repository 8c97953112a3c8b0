import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcsp.breakdown import CostBreakdown
from qcsp.gadgets import (
    DEFAULT_SYNTHESIS,
    SynthesisModel,
    adder_cost,
    ceil_log2,
    compare_and_swap_cost,
    comparator_cost,
    cswap_cost,
    fanout_cost,
    load_gadget_table,
    mct_cost,
    synthesis_cost,
)
from qcsp.resources import COUNT_LIMIT, Resources, par, par_all, repeat, replicate, seq, seq_all

ZERO = Resources()

res = st.builds(
    Resources,
    t_depth=st.integers(0, 10**6),
    t_count=st.integers(0, 10**20),
    toffoli_count=st.integers(0, 10**20),
    clifford_depth=st.integers(0, 10**6),
    ancillas=st.integers(0, 10**9),
    logical_qubits=st.integers(0, 10**9),
)


def test_seq_identity_and_doubling():
    x = Resources(t_depth=7, toffoli_count=13)
    assert seq(ZERO, x) == x
    assert seq(x, x).t_depth == 14
    assert seq(x, x).toffoli_count == 26


def test_par_identity():
    x = Resources(t_depth=3, toffoli_count=5, ancillas=2)
    assert par(ZERO, x) == x


def test_par_depth_is_max():
    p = Resources(t_depth=88, toffoli_count=10)
    h = Resources(t_depth=903, toffoli_count=20)
    out = par(p, h)
    assert out.t_depth == 903
    assert out.toffoli_count == 30


@given(res, res, res)
def test_seq_par_associative(a, b, c):
    assert seq(seq(a, b), c) == seq(a, seq(b, c))
    assert par(par(a, b), c) == par(a, par(b, c))


@given(res, res)
def test_par_depth_exact_max(a, b):
    assert par(a, b).t_depth == max(a.t_depth, b.t_depth)
    assert par(a, b).ancillas == a.ancillas + b.ancillas
    assert seq(a, b).ancillas == max(a.ancillas, b.ancillas)


@given(res, st.integers(0, 50))
def test_repeat_matches_folded_seq(r, times):
    folded = seq_all([r] * times) if times else ZERO
    rep = repeat(r, times)
    assert rep.t_depth == folded.t_depth
    assert rep.toffoli_count == folded.toffoli_count


@given(res, st.integers(1, 50))
def test_replicate_matches_folded_par(r, copies):
    assert replicate(r, copies) == par_all([r] * copies)


def test_counts_beyond_64_bits():
    big = Resources(toffoli_count=6 * 10**20)
    assert seq(big, big).toffoli_count == 12 * 10**20
    assert repeat(Resources(toffoli_count=10**12), 10**12).toffoli_count == 10**24


def test_overflow_is_an_error():
    with pytest.raises(OverflowError):
        Resources(toffoli_count=COUNT_LIMIT + 1)
    with pytest.raises(OverflowError):
        seq(Resources(toffoli_count=COUNT_LIMIT), Resources(toffoli_count=1))


def test_negative_rejected():
    with pytest.raises(ValueError):
        Resources(t_depth=-1)


def test_dict_round_trip():
    r = Resources(1, 2, 3, 4, 5, 6)
    assert Resources.from_dict(r.to_dict()) == r


def test_mct_examples():
    assert mct_cost(1).t_depth == mct_cost(1).toffoli_count == 0
    two = mct_cost(2)
    assert (two.toffoli_count, two.t_depth) == (1, 1)
    fourteen = mct_cost(14, uncompute=True)
    assert (fourteen.toffoli_count, fourteen.t_depth) == (26, 14)
    assert mct_cost(885744).t_depth == 39


def test_mct_rejects_zero():
    with pytest.raises(ValueError):
        mct_cost(0)


@given(st.integers(2, 5000))
def test_mct_count_and_monotone_depth(c):
    r = mct_cost(c)
    assert r.toffoli_count == c - 1
    assert r.t_depth == 2 * ceil_log2(c) - 1
    assert mct_cost(c + 1).t_depth >= r.t_depth
    assert mct_cost(c, reduced=False).toffoli_count == 2 * c - 3


def test_fanout():
    assert fanout_cost(1).ancillas == 0
    eight = fanout_cost(8)
    assert (eight.ancillas, eight.clifford_depth) == (7, 3)
    assert eight.t_depth == eight.toffoli_count == eight.t_count == 0
    assert fanout_cost(136 * 20).t_depth == 0


def test_adder_anchors():
    inc = adder_cost(8, in_place=True, controlled=True)
    assert (inc.toffoli_count, inc.t_depth) == (38, 14)
    assert adder_cost(10).t_depth == 8
    assert adder_cost(1).t_depth == 1


def test_adder_range():
    with pytest.raises(ValueError):
        adder_cost(0)
    with pytest.raises(ValueError):
        adder_cost(65)


def test_comparator_and_swap():
    assert comparator_cost(1).toffoli_count == 1
    for r in range(1, 9):
        assert cswap_cost(r).toffoli_count == 3 * r
    costs = [compare_and_swap_cost(b) for b in range(1, 9)]
    assert all(c.toffoli_count > 0 for c in costs)
    assert all(a.toffoli_count <= b.toffoli_count for a, b in zip(costs, costs[1:]))
    assert all(a.t_depth <= b.t_depth for a, b in zip(costs, costs[1:]))


def test_synthesis():
    assert synthesis_cost(2**-8).t_count == 19
    assert synthesis_cost(2**-9).t_count - synthesis_cost(2**-8).t_count in (1, 2)
    T, n = 10**15, 100
    eps = 1 / (64 * math.sqrt(T * n))
    approx = 1.15 * math.log2(64 * math.sqrt(T * n)) + 17.2
    assert abs(synthesis_cost(eps, controlled=True).t_depth - approx) <= 1
    assert synthesis_cost(eps, controlled=True).t_count > synthesis_cost(eps).t_count
    for bad in (0.0, 1.0, -0.5):
        with pytest.raises(ValueError):
            synthesis_cost(bad)


def test_synthesis_model_validation():
    with pytest.raises(ValueError):
        SynthesisModel(0.0, 9.2, 8, 2)
    with pytest.raises(ValueError):
        SynthesisModel(1.15, -1.0, 8, 2)
    assert DEFAULT_SYNTHESIS.tcount_slope == 1.15


def test_gadget_table_loads():
    table = load_gadget_table()
    assert table
    assert all(g.cost().t_depth >= 0 for g in table.values())


def test_breakdown_total_is_row_composition():
    b = CostBreakdown("t")
    a = Resources(t_depth=3, toffoli_count=4)
    c = Resources(t_depth=5, toffoli_count=1)
    b.add("a", a, 0)
    b.add("c", c, 0)
    b.add("d", a, 1)
    assert b.total == seq(par(a, c), a)
    assert b.row("c") == c
    with pytest.raises(KeyError):
        b.row("missing")
    with pytest.raises(ValueError):
        b.add("back", a, 0)
    assert "Total" in b.format_table()
