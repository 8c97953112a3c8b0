"""Cost of Grover search for k-SAT: oracle, diffusion, iteration count."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .breakdown import CostBreakdown
from .gadgets import ceil_log2, fanout_cost, mct_cost
from .resources import Resources, repeat, seq

# Expected iterations of the unknown-count search are at most
# GROVER_CONSTANT * ln(1/delta) * sqrt(N).
GROVER_CONSTANT = 1.582


@dataclass(frozen=True)
class GroverParams:
    """A random k-SAT search instance.

    Attributes:
        n: Variables, so the search space has 2**n elements.
        k: Clause width.
        m: Clause count.
        delta: Target failure probability.
    """

    n: int
    k: int
    m: int
    delta: float = 0.1

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise ValueError("n and k must be >= 1")
        if self.k > self.n:
            raise ValueError("k must not exceed n")
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if not 0 < self.delta < 1:
            raise ValueError("delta must be in (0, 1)")


def iteration_multiplier(delta: float) -> float:
    """Constant c with iterations = ceil(c * sqrt(N))."""
    if not 0 < delta < 1:
        raise ValueError("delta must be in (0, 1)")
    return GROVER_CONSTANT * math.log(1 / delta)


def grover_iterations(n: int, delta: float = 0.1) -> int:
    """Oracle calls needed to search 2**n elements with failure probability delta."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return math.ceil(iteration_multiplier(delta) * math.sqrt(2**n))


def text_depth_formula(k: int, m: int) -> int:
    """Closed-form oracle T-depth 4*ceil(log k - 1) + 2*ceil(log m - 1) + 3."""
    return 4 * math.ceil(math.log2(k) - 1) + 2 * math.ceil(math.log2(m) - 1) + 3


def text_count_formula(k: int, m: int) -> int:
    """Closed-form oracle Toffoli count m(2k+1) - 3, kept for comparison."""
    return m * (2 * k + 1) - 3


def oracle_cost(k: int, m: int, *, text_formula: bool = False) -> CostBreakdown:
    """Oracle that marks assignments violating no clause.

    Every clause is checked on its own copy of the input in parallel, the
    flags are combined by one m-control Toffoli, and the checks are then
    uncomputed. The global AND is not uncomputed.

    Args:
        k: Clause width.
        m: Clause count.
        text_formula: Replace the constructive Toffoli count of the AND row
            so the total equals m(2k+1) - 3. Depths are unchanged.
    """
    if k < 1 or m < 1:
        raise ValueError("k and m must be >= 1")
    fan = fanout_cost(m)
    check = mct_cost(k, uncompute=True)
    checks = Resources(
        t_depth=check.t_depth,
        toffoli_count=m * check.toffoli_count,
        clifford_depth=check.clifford_depth,
        ancillas=m * check.ancillas,
        logical_qubits=m * (k + 1),
    )
    and_all = mct_cost(m) if m > 1 else Resources(clifford_depth=1, logical_qubits=2)
    if text_formula:
        target = text_count_formula(k, m) - checks.toffoli_count
        and_all = Resources(
            t_depth=and_all.t_depth,
            toffoli_count=max(target, 0),
            ancillas=and_all.ancillas,
            logical_qubits=and_all.logical_qubits,
        )
    b = CostBreakdown("Grover oracle", params={"k": k, "m": m, "text_formula": text_formula})
    b.add("Fan-out / fan-in", seq(fan, fan))
    b.add("Check clauses and uncompute", checks)
    b.add("AND of all clauses", and_all)
    return b


def diffusion_cost(n: int) -> Resources:
    """Reflection about the uniform state: an n-control Toffoli between Hadamard layers."""
    return mct_cost(n)


@dataclass(frozen=True)
class GroverEstimate:
    """End-to-end Grover cost."""

    params: GroverParams
    iterations: int
    oracle: CostBreakdown
    per_iteration: Resources
    total: Resources

    def to_dict(self) -> dict:
        return {
            "params": {"n": self.params.n, "k": self.params.k, "m": self.params.m, "delta": self.params.delta},
            "iterations": self.iterations,
            "oracle": self.oracle.to_dict(),
            "per_iteration": self.per_iteration.to_dict(),
            "total": self.total.to_dict(),
        }


def grover_total(params: GroverParams, *, text_formula: bool = False) -> GroverEstimate:
    """Total cost: iterations x (oracle + diffusion)."""
    oracle = oracle_cost(params.k, params.m, text_formula=text_formula)
    per_iter = seq(oracle.total, diffusion_cost(params.n))
    its = grover_iterations(params.n, params.delta)
    return GroverEstimate(params, its, oracle, per_iter, repeat(per_iter, its))


__all__ = [
    "GROVER_CONSTANT",
    "GroverEstimate",
    "GroverParams",
    "ceil_log2",
    "diffusion_cost",
    "grover_iterations",
    "grover_total",
    "iteration_multiplier",
    "oracle_cost",
    "text_count_formula",
    "text_depth_formula",
]
