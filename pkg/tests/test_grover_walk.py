import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import binom_cdf_exact, binom_sf_exact
from qcsp.fitting import FitEntry, default_registry
from qcsp.gadgets import ceil_log2, mct_cost
from qcsp.grover import (
    GroverParams,
    grover_iterations,
    grover_total,
    iteration_multiplier,
    oracle_cost,
    text_count_formula,
    text_depth_formula,
)
from qcsp.instances import clause_count, colour_count
from qcsp.ra_cost import (
    increment_depth_bound,
    increment_step_cost,
    ra_cost_colouring,
    ra_cost_sat,
    rb_cost_colouring,
    rb_cost_sat,
    uniform_diffusion_cost,
)
from qcsp.walk import (
    PhaseEstimationParams,
    backtracking_total,
    pe_params,
    quantum_tree_size,
    walk_counts,
)

K14_M = 885743


# ---- Grover ----------------------------------------------------------------


def test_iteration_multiplier():
    # 1.582 * ln 10 = 3.64269..., quoted as 3.642 by truncation
    assert iteration_multiplier(0.1) == pytest.approx(3.642689617, abs=1e-9)
    assert math.floor(iteration_multiplier(0.1) * 1000) / 1000 == 3.642


def test_iterations():
    # 1.582 * ln(10) * 2**20 evaluated directly
    assert grover_iterations(40, 0.1) == math.ceil(1.582 * math.log(10) * 2**20) == 3819637
    assert grover_iterations(1, math.exp(-1)) == math.ceil(1.582 * math.sqrt(2))
    with pytest.raises(ValueError):
        grover_iterations(0)
    with pytest.raises(ValueError):
        iteration_multiplier(1.0)


def test_oracle_rows():
    b = oracle_cost(14, K14_M)
    checks = b.row("Check clauses and uncompute")
    both = b.row("AND of all clauses")
    assert checks.t_depth == 14
    assert both.t_depth == 39
    assert b.total.t_depth == 53
    assert float(f"{checks.toffoli_count:.1e}") == 2.3e7
    assert float(f"{both.toffoli_count:.1e}") == 8.9e5
    assert b.row("Fan-out / fan-in").t_depth == 0
    assert text_depth_formula(14, K14_M) == 53


def test_oracle_constructive_count():
    for k, m in ((2, 1), (3, 5), (14, K14_M)):
        assert oracle_cost(k, m).total.toffoli_count == m * (2 * k - 2) + (m - 1)
    assert oracle_cost(2, 1).total.toffoli_count == 2


def test_text_formula_flag():
    b = oracle_cost(14, 1000, text_formula=True)
    assert b.total.toffoli_count == text_count_formula(14, 1000)
    assert b.total.t_depth == oracle_cost(14, 1000).total.t_depth


@given(st.integers(2, 20), st.integers(2, 10**6))
@settings(max_examples=80)
def test_oracle_depth_depends_on_log_m(k, m):
    d = oracle_cost(k, m).total.t_depth
    assert d == mct_cost(k, True).t_depth + 2 * ceil_log2(m) - 1
    lo = 2 ** (ceil_log2(m) - 1) + 1
    assert oracle_cost(k, max(lo, 2)).total.t_depth == d


def test_grover_total_optimistic_point():
    est = grover_total(GroverParams(78, 14, K14_M))
    assert est.per_iteration.t_depth == 53 + 2 * ceil_log2(78) - 1 == 66
    assert est.total.t_depth == est.iterations * 66
    assert est.total.toffoli_count == est.iterations * est.per_iteration.toffoli_count
    assert est.total.t_depth == pytest.approx(1.32e14, rel=0.01)
    assert est.total.toffoli_count == pytest.approx(4.79e19, rel=0.01)


def test_grover_smallest():
    est = grover_total(GroverParams(1, 1, 1))
    assert est.iterations == grover_iterations(1)
    assert est.total.t_depth == est.iterations * est.per_iteration.t_depth


def test_grover_params_validation():
    for bad in ((0, 1, 1), (3, 4, 1), (3, 2, 0)):
        with pytest.raises(ValueError):
            GroverParams(*bad)
    with pytest.raises(ValueError):
        GroverParams(3, 2, 1, delta=1.0)


# ---- phase estimation and walk ------------------------------------------------


def test_pe_params_reference():
    p = pe_params(0.1, 1 / 32)
    assert (p.K, p.L) == (79, 34)
    assert p.p_unmarked_bound == pytest.approx(0.3536, abs=1e-4)


def test_pe_tails_exact():
    p0 = Fraction(2) / Fraction(math.isqrt(32 * 10**20), 10**10)  # 2/sqrt(32) from above
    half = Fraction(1, 2)
    assert binom_cdf_exact(33, 79, half) <= Fraction(1, 10)
    assert binom_sf_exact(34, 79, p0) <= Fraction(1, 10)
    p = pe_params()
    assert p.miss_probability() == pytest.approx(float(binom_cdf_exact(33, 79, half)), rel=1e-9)


def test_pe_K_minimal():
    p0 = 2 / math.sqrt(32)
    K = 78
    from scipy.stats import binom

    ok = any(binom.cdf(L - 1, K, 0.5) <= 0.1 and binom.sf(L - 1, K, p0) <= 0.1 for L in range(K + 1))
    assert not ok


def test_pe_K_monotone_in_b():
    Ks = [pe_params(0.1, b).K for b in (1 / 20, 1 / 24, 1 / 32, 1 / 48, 1 / 64, 1 / 128)]
    assert Ks == sorted(Ks, reverse=True)


def test_pe_validation():
    with pytest.raises(ValueError):
        pe_params(0.1, 1 / 16)
    with pytest.raises(ValueError):
        pe_params(0.6, 1 / 32)


def test_walk_counts():
    p = pe_params()
    w = walk_counts(1, 1, p)
    assert (w.sequential_steps, w.total_steps) == (32, 2528)
    assert walk_counts(4, 1, p).sequential_steps == 64
    Tn = 2.6e19
    assert walk_counts(int(Tn), 1, p).total_steps == pytest.approx(1.3e13, rel=0.02)
    with pytest.raises(ValueError):
        walk_counts(0, 1, p)


def test_quantum_tree_size():
    fits = default_registry()
    assert quantum_tree_size("colouring", FitEntry("x", 0, 0.0, math.log2(100), "nodes", ""), 10) == 400
    assert quantum_tree_size("sat", fits.get("sat_tree", 12), 72) == pytest.approx(3.6e17, rel=0.05)
    assert quantum_tree_size("colouring", fits.get("colouring_tree", 0), 144) == pytest.approx(5.1e15, rel=0.05)
    with pytest.raises(ValueError):
        quantum_tree_size("tsp", fits.get("colouring_tree", 0), 10)


def test_backtracking_totals_optimistic():
    fits = default_registry()
    sat = backtracking_total("sat", 72, 12, fits.get("sat_tree", 12), m=clause_count(72, 12, "ceil"))
    assert sat.total.t_depth == pytest.approx(1.63e14, rel=0.5)
    assert sat.total.non_clifford_count == pytest.approx(6.16e20, rel=0.5)
    col = backtracking_total("colouring", 144, colour_count(144), fits.get("colouring_tree", 0))
    assert col.total.t_depth == pytest.approx(1.62e14, rel=0.5)
    assert sat.total.t_depth == sat.budget.sequential_steps * sat.step_depth
    with pytest.raises(ValueError):
        backtracking_total("sat", 72, 12, fits.get("sat_tree", 12))


def test_depth_scales_as_sqrt_T():
    p = pe_params()
    a = walk_counts(10**12, 50, p).sequential_steps
    b = walk_counts(4 * 10**12, 50, p).sequential_steps
    assert b / a == pytest.approx(2.0, rel=1e-6)


# ---- R_A / R_B ----------------------------------------------------------------


def test_ra_colouring_reference():
    b = ra_cost_colouring(136, 19, 10**16)
    assert 3114 / 2 <= b.total.t_depth <= 3114 * 2
    assert 2.5e7 / 2 <= b.total.non_clifford_count <= 2.5e7 * 2
    assert 1032 / 2 <= b.row("Diffusion").t_depth <= 1032 * 2
    assert 160 / 2 <= b.row("Conversion").t_depth <= 160 * 2


def test_ra_sat_reference():
    b = ra_cost_sat(71, 12, 201518, quantum_tree_size("sat", default_registry().get("sat_tree", 12), 71))
    assert 524 / 2 <= b.total.t_depth <= 524 * 2
    assert 87 / 2 <= b.row("Compute P(x)").t_depth <= 87 * 2
    assert 2.3e7 / 2 <= b.total.non_clifford_count <= 2.3e7 * 2
    # m clause checks, each a (k+1)-control Toffoli computed and uncomputed
    m, k = 201518, 12
    P = b.row("Compute P(x)").non_clifford_count
    assert P >= 2 * m * (2 * (k + 1) - 3)
    assert P == pytest.approx(2 * m * (2 * k - 1), rel=0.05)


def test_ra_sat_minimal():
    b = ra_cost_sat(1, 1, 1, 1)
    assert b.total.t_depth > 0
    assert b.row("Compute h(x)").t_depth > 0


@pytest.mark.parametrize("n,k", [(20, 4), (60, 9), (136, 19)])
def test_rows_compose_to_total(n, k):
    for b in (ra_cost_colouring(n, k, 10**9), rb_cost_colouring(n, k, 10**9)):
        by_stage = {}
        for r in b.rows:
            by_stage.setdefault(r.stage, []).append(r.cost)
        assert b.total.t_depth == sum(max(c.t_depth for c in cs) for cs in by_stage.values())
        assert b.total.non_clifford_count == sum(r.cost.non_clifford_count for r in b.rows)


def test_rb_cheaper_than_ra():
    assert rb_cost_colouring(136, 19, 10**16).total.t_depth <= ra_cost_colouring(136, 19, 10**16).total.t_depth
    assert rb_cost_sat(71, 12, 201518, 10**17).total.t_depth <= ra_cost_sat(71, 12, 201518, 10**17).total.t_depth


def test_uniform_diffusion_power_of_two():
    for r in (2, 3, 4, 5):
        d = uniform_diffusion_cost(r)
        assert d.t_count == 10 * r - 9
        assert d.t_depth == 2 * ceil_log2(r - 1) + 3


def test_increment_step():
    for r in (2, 4, 8):
        assert increment_step_cost(r, 8).t_depth == increment_depth_bound(r) == 4 * ceil_log2(r) + 47
    for r in (3, 5, 6, 7):
        assert increment_step_cost(r, 8).t_depth <= increment_depth_bound(r)


def test_per_step_depth_monotone_in_n():
    k = 10
    depths = [ra_cost_colouring(n, k, 2**30).total.t_depth * 32 * math.sqrt(n) for n in range(20, 200, 10)]
    assert depths == sorted(depths)


def test_ra_validation():
    with pytest.raises(ValueError):
        ra_cost_colouring(5, 1, 10)
    with pytest.raises(ValueError):
        ra_cost_colouring(3, 5, 10)


def test_phase_params_dataclass():
    p = PhaseEstimationParams(1 / 32, 79, 34, 0.1)
    assert p.false_accept_probability() <= 0.1
