"""Quantum backtracking: phase-estimation constants, walk budgets, end-to-end cost."""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.stats import binom

from .fitting import FitEntry, ScalingFit
from .resources import Resources

# Tree-size inflation of the quantum search relative to the classical fit.
COLOURING_TREE_PENALTY = 4.0
SAT_TREE_PENALTY = 1.5

DEFAULT_B = 1 / 32
DEFAULT_DELTA = 0.1
MAX_REPETITIONS = 10**6


@dataclass(frozen=True)
class PhaseEstimationParams:
    """Repeated phase estimation with a majority-style threshold.

    Each of K runs accepts with probability at least 1/2 when a marked vertex
    exists and at most 2*sqrt(b) otherwise; the detector accepts when at
    least L runs accept.
    """

    b: float
    K: int
    L: int
    delta: float

    @property
    def p_unmarked_bound(self) -> float:
        return 2 * math.sqrt(self.b)

    def miss_probability(self) -> float:
        """P[fewer than L of K runs accept | marked]."""
        return float(binom.cdf(self.L - 1, self.K, 0.5))

    def false_accept_probability(self) -> float:
        """P[at least L of K runs accept | unmarked], at the bound 2*sqrt(b)."""
        return float(binom.sf(self.L - 1, self.K, self.p_unmarked_bound))


def pe_params(delta: float = DEFAULT_DELTA, b: float = DEFAULT_B) -> PhaseEstimationParams:
    """Smallest K admitting a threshold L with both error tails at most delta.

    For each K the smallest L whose false-accept tail is within delta is the
    best choice for the miss tail, so one L per K is checked.

    Raises:
        ValueError: b outside (0, 1/16) or delta outside (0, 1/2).
    """
    if not 0 < b < 1 / 16:
        raise ValueError("b must lie in (0, 1/16)")
    if not 0 < delta < 0.5:
        raise ValueError("delta must lie in (0, 1/2)")
    p0 = 2 * math.sqrt(b)
    for K in range(1, MAX_REPETITIONS + 1):
        # smallest L with P[X >= L] <= delta, X ~ Bin(K, p0)
        L = int(binom.isf(delta, K, p0)) + 1
        while L > 0 and binom.sf(L - 2, K, p0) <= delta:
            L -= 1
        while binom.sf(L - 1, K, p0) > delta:
            L += 1
        if L > K:
            continue
        if binom.cdf(L - 1, K, 0.5) <= delta:
            return PhaseEstimationParams(b=b, K=K, L=L, delta=delta)
    raise RuntimeError("no repetition count found below the search cap")


@dataclass(frozen=True)
class WalkBudget:
    """Walk-step counts for one detection run.

    Attributes:
        sequential_steps: Controlled walk steps applied one after another.
        total_steps: Walk steps summed over all K repetitions.
        tree_size: Tree size T used.
        depth_bound: Tree depth n.
    """

    sequential_steps: int
    total_steps: int
    tree_size: int
    depth_bound: int


def walk_counts(T: int, n: int, params: PhaseEstimationParams) -> WalkBudget:
    """Sequential ceil(sqrt(Tn)/b) and total ceil(K sqrt(Tn)/b) walk steps."""
    if T < 1 or n < 1:
        raise ValueError("T and n must be >= 1")
    root = math.sqrt(T * n)
    return WalkBudget(
        sequential_steps=math.ceil(root / params.b),
        total_steps=math.ceil(params.K * root / params.b),
        tree_size=int(T),
        depth_bound=n,
    )


def quantum_tree_size(problem: str, fit: ScalingFit | FitEntry, n: int) -> int:
    """Tree size seen by the quantum search, from a classical tree-size fit."""
    if problem == "colouring":
        factor = COLOURING_TREE_PENALTY
    elif problem == "sat":
        factor = SAT_TREE_PENALTY
    else:
        raise ValueError("problem must be 'colouring' or 'sat'")
    return max(1, math.ceil(factor * fit.value(n)))


@dataclass(frozen=True)
class BacktrackingEstimate:
    """End-to-end backtracking cost."""

    problem: str
    n: int
    k: int
    m: int | None
    tree_size: int
    params: PhaseEstimationParams
    budget: WalkBudget
    ra: "object"
    rb: "object"
    total: Resources

    @property
    def step_depth(self) -> int:
        return self.ra.total.t_depth + self.rb.total.t_depth

    def to_dict(self) -> dict:
        return {
            "problem": self.problem,
            "n": self.n,
            "k": self.k,
            "m": self.m,
            "tree_size": self.tree_size,
            "K": self.params.K,
            "L": self.params.L,
            "b": self.params.b,
            "sequential_steps": self.budget.sequential_steps,
            "total_steps": self.budget.total_steps,
            "ra": self.ra.to_dict(),
            "rb": self.rb.to_dict(),
            "total": self.total.to_dict(),
        }


def backtracking_total(
    problem: str,
    n: int,
    k: int,
    fit: ScalingFit | FitEntry,
    m: int | None = None,
    params: PhaseEstimationParams | None = None,
) -> BacktrackingEstimate:
    """Detection cost: per-step R_A + R_B, depth over sequential steps, counts over all runs.

    Args:
        problem: "colouring" (k colours) or "sat" (clause width k, m clauses).
        n: Vertices or variables.
        k: Colours or clause width.
        fit: Classical tree-size fit for this problem.
        m: Clause count, required for SAT.
        params: Phase-estimation constants, default pe_params().
    """
    from .ra_cost import ra_cost_colouring, ra_cost_sat, rb_cost_colouring, rb_cost_sat

    params = params or pe_params()
    T = quantum_tree_size(problem, fit, n)
    budget = walk_counts(T, n, params)
    if problem == "colouring":
        ra, rb = ra_cost_colouring(n, k, T), rb_cost_colouring(n, k, T)
    else:
        if m is None:
            raise ValueError("SAT needs the clause count m")
        ra, rb = ra_cost_sat(n, k, m, T), rb_cost_sat(n, k, m, T)
    step_a, step_b = ra.total, rb.total
    s, t = budget.sequential_steps, budget.total_steps
    total = Resources(
        t_depth=s * (step_a.t_depth + step_b.t_depth),
        t_count=t * (step_a.t_count + step_b.t_count),
        toffoli_count=t * (step_a.toffoli_count + step_b.toffoli_count),
        clifford_depth=s * (step_a.clifford_depth + step_b.clifford_depth),
        ancillas=params.K * max(step_a.ancillas, step_b.ancillas),
        logical_qubits=params.K * max(step_a.logical_qubits, step_b.logical_qubits),
    )
    return BacktrackingEstimate(problem, n, k, m, T, params, budget, ra, rb, total)
