"""End-to-end estimates: hardware regimes, largest instance per day, speedups, factories, decoding."""

from __future__ import annotations

import csv
import math
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from .factory import HALVED, FactoryReport, toffoli_factory
from .fitting import FitRegistry, default_registry
from .grover import GroverParams, grover_total
from .instances import clause_count, colour_count
from .resources import Resources
from .walk import backtracking_total

DAY_SECONDS = 86400.0
CLASSICAL_CLOCK_HZ = 1e9
# Classical cycles per oracle evaluation in the idealized comparison.
CLASSICAL_ORACLE_CYCLES = 1000
# Measured DSATUR cost: seconds = 2.50e-6 * nodes - 0.05.
COLOURING_SECONDS_PER_NODE = 2.50e-6
COLOURING_SECONDS_OFFSET = -0.05
# Decoding time per qubit per surface-code cycle on one CPU (440 us for 5000 qubits).
DECODE_SECONDS_PER_QUBIT_CYCLE = 440e-6 / 5000
PROCESSOR_SPEED = {"CPU": 1.0, "GPU": 100.0, "ASIC": 1e6}

ALGORITHMS = ("grover", "backtracking")
PROBLEMS = ("sat", "colouring")


@dataclass(frozen=True)
class HardwareRegime:
    """Physical-layer assumptions. Times are in seconds."""

    name: str
    measurement_time: float
    two_qubit_gate_time: float
    cycle_time: float
    gate_error: float

    def __post_init__(self):
        for f in ("measurement_time", "two_qubit_gate_time", "cycle_time"):
            if not getattr(self, f) > 0:
                raise ValueError(f"{f} must be positive")
        if not 0 < self.gate_error < 1:
            raise ValueError("gate_error must be in (0, 1)")


REGIMES = {
    "Realistic": HardwareRegime("Realistic", 50e-9, 30e-9, 200e-9, 1e-3),
    "Plausible": HardwareRegime("Plausible", 5e-9, 3e-9, 20e-9, 1e-4),
    "Optimistic": HardwareRegime("Optimistic", 0.5e-9, 0.3e-9, 2e-9, 1e-5),
}
REGIME_PROCESSOR = {"Realistic": "CPU", "Plausible": "GPU", "Optimistic": "ASIC"}


def regime(name: str, custom: dict[str, HardwareRegime] | None = None) -> HardwareRegime:
    """Look up a regime by name, case-insensitively, in ``custom`` then the built-ins."""
    pool = {**REGIMES, **(custom or {})}
    for key, value in pool.items():
        if key.lower() == name.lower():
            return value
    raise KeyError(f"unknown regime {name!r}; known: {sorted(pool)}")


def load_regimes(path: str | Path) -> dict[str, HardwareRegime]:
    """Read regimes from a CSV with one column per HardwareRegime field."""
    names = [f.name for f in fields(HardwareRegime)]
    out = {}
    with open(path, newline="") as fh:
        reader = csv.DictReader(line for line in fh if not line.startswith("#"))
        missing = set(names) - set(reader.fieldnames or ())
        if missing:
            raise ValueError(f"{path}: missing columns {sorted(missing)}")
        for row in reader:
            reg = HardwareRegime(row["name"], *(float(row[k]) for k in names[1:]))
            out[reg.name] = reg
    return out


def save_regimes(regimes: dict[str, HardwareRegime], path: str | Path) -> None:
    names = [f.name for f in fields(HardwareRegime)]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(names)
        for reg in regimes.values():
            w.writerow([getattr(reg, k) for k in names])


# ---- idealized square-root speedups -------------------------------------


@dataclass(frozen=True)
class IdealizedRow:
    oracle_depth: int
    regime: str
    max_depth: float
    n: int
    quantum_runtime_s: float
    classical_runtime_s: float
    speedup: float


def idealized_speedup(
    oracle_depth: int,
    reg: HardwareRegime,
    day_budget_s: float = DAY_SECONDS,
    clock_hz: float = CLASSICAL_CLOCK_HZ,
    classical_cycles: int = CLASSICAL_ORACLE_CYCLES,
) -> IdealizedRow:
    """Speedup with no fault-tolerance overhead.

    The quantum side runs oracle_depth * 2^(n/2) gate layers; the classical
    side spends ``classical_cycles`` per evaluation over 2^n evaluations,
    whatever the quantum oracle depth. n is the largest integer fitting the
    budget.
    """
    if oracle_depth < 1:
        raise ValueError("oracle_depth must be >= 1")
    max_depth = day_budget_s / reg.two_qubit_gate_time
    ratio = max_depth / oracle_depth
    n = max(0, math.floor(2 * math.log2(ratio))) if ratio >= 1 else 0
    while n > 0 and oracle_depth * 2 ** (n / 2) > max_depth:
        n -= 1
    while oracle_depth * 2 ** ((n + 1) / 2) <= max_depth:
        n += 1
    q = oracle_depth * 2 ** (n / 2) * reg.two_qubit_gate_time
    c = classical_cycles * 2.0**n / clock_hz
    return IdealizedRow(oracle_depth, reg.name, max_depth, n, q, c, c / q)


# ---- fault-tolerant estimates -------------------------------------------


def _fits(fits: FitRegistry | None) -> FitRegistry:
    return fits if fits is not None else default_registry()


def quantum_resources(algorithm: str, problem: str, n: int, k: int, fits: FitRegistry | None = None) -> tuple[Resources, dict]:
    """Total resources at size n, plus the instance parameters used.

    For colouring, ``k`` is ignored and the colour count follows the
    chromatic-number estimate for n.
    """
    fits = _fits(fits)
    if algorithm == "grover":
        if problem != "sat":
            raise ValueError("the Grover estimate is for SAT only")
        m = clause_count(n, k, "ceil")
        est = grover_total(GroverParams(n, k, m))
        return est.total, {"n": n, "k": k, "m": m, "iterations": est.iterations}
    if algorithm != "backtracking":
        raise ValueError(f"algorithm must be one of {ALGORITHMS}")
    if problem == "sat":
        m = clause_count(n, k, "ceil")
        est = backtracking_total("sat", n, k, fits.get("sat_tree", k), m=m)
    elif problem == "colouring":
        m = None
        k = colour_count(n)
        est = backtracking_total("colouring", n, k, fits.get("colouring_tree", 0))
    else:
        raise ValueError(f"problem must be one of {PROBLEMS}")
    info = {
        "n": n,
        "k": k,
        "m": m,
        "tree_size": est.tree_size,
        "sequential_steps": est.budget.sequential_steps,
        "total_steps": est.budget.total_steps,
        "step_depth": est.step_depth,
    }
    return est.total, info


def classical_runtime(algorithm: str, problem: str, n: int, k: int, fits: FitRegistry | None = None) -> float:
    """Classical baseline in CPU-seconds from the registered fits."""
    fits = _fits(fits)
    if problem == "sat":
        return fits.get("sat_runtime", k).value(n)
    if problem == "colouring":
        nodes = fits.get("colouring_tree", 0).value(n)
        return max(COLOURING_SECONDS_PER_NODE * nodes + COLOURING_SECONDS_OFFSET, 0.0)
    raise ValueError(f"problem must be one of {PROBLEMS}")


def quantum_runtime(total: Resources, reg: HardwareRegime) -> float:
    """Seconds: one measurement time per T-stage."""
    return total.t_depth * reg.measurement_time


def _min_n(algorithm: str, problem: str, k: int) -> int:
    if problem == "colouring":
        return 4
    return k


def max_instance(
    algorithm: str,
    problem: str,
    k: int,
    reg: HardwareRegime,
    fits: FitRegistry | None = None,
    day_budget_s: float = DAY_SECONDS,
    n_cap: int = 4096,
) -> int:
    """Largest n whose quantum runtime fits the budget, or 0 if none does.

    Runtime grows exponentially in n, so the boundary is bracketed by
    doubling the step and then bisected.
    """
    fits = _fits(fits)

    def fits_budget(n: int) -> bool:
        total, _ = quantum_resources(algorithm, problem, n, k, fits)
        return quantum_runtime(total, reg) <= day_budget_s

    lo = _min_n(algorithm, problem, k)
    if not fits_budget(lo):
        return 0
    step = 1
    hi = lo + step
    while hi <= n_cap and fits_budget(hi):
        lo, step = hi, step * 2
        hi = lo + step
    hi = min(hi, n_cap + 1)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if fits_budget(mid):
            lo = mid
        else:
            hi = mid
    return lo


@dataclass(frozen=True)
class EstimateReport:
    """One column of a speedup table."""

    algorithm: str
    problem: str
    k: int
    regime: str
    max_n: int
    t_depth: int
    t_or_toffoli_count: int
    factory_qubits: float
    quantum_runtime_s: float
    classical_runtime_s: float
    speedup: float
    details: dict

    def to_dict(self) -> dict:
        return asdict(self)


def estimate_report(
    algorithm: str,
    problem: str,
    k: int,
    reg: HardwareRegime,
    fits: FitRegistry | None = None,
    day_budget_s: float = DAY_SECONDS,
    layout: str = HALVED,
) -> EstimateReport:
    """Largest solvable instance, its resources, factory size and speedup."""
    fits = _fits(fits)
    n = max_instance(algorithm, problem, k, reg, fits, day_budget_s)
    if n == 0:
        raise ValueError("no instance fits the time budget")
    total, info = quantum_resources(algorithm, problem, n, k, fits)
    runtime = quantum_runtime(total, reg)
    count = total.non_clifford_count
    factory: FactoryReport = toffoli_factory(
        reg.gate_error, count, t_algo_cycles=runtime / reg.cycle_time, layout=layout
    )
    classical = classical_runtime(algorithm, problem, n, info["k"], fits)
    details = dict(info)
    details["factory"] = factory.to_dict()
    return EstimateReport(
        algorithm=algorithm,
        problem=problem,
        k=info["k"],
        regime=reg.name,
        max_n=n,
        t_depth=total.t_depth,
        t_or_toffoli_count=count,
        factory_qubits=factory.Q_total,
        quantum_runtime_s=runtime,
        classical_runtime_s=classical,
        speedup=classical / runtime,
        details=details,
    )


# ---- decoding cost ------------------------------------------------------


@dataclass(frozen=True)
class DecodeCost:
    processor: str
    per_qubit_cycle_seconds: float
    processor_days: float


def decode_cost(n_states: float, S: float, processor: str = "CPU") -> DecodeCost:
    """Processor-days to decode N distilled states of spacetime S each."""
    try:
        speed = PROCESSOR_SPEED[processor]
    except KeyError:
        raise ValueError(f"processor must be one of {sorted(PROCESSOR_SPEED)}") from None
    if n_states < 0 or S < 0:
        raise ValueError("n_states and S must be non-negative")
    days = n_states * S * DECODE_SECONDS_PER_QUBIT_CYCLE / speed / DAY_SECONDS
    return DecodeCost(processor, DECODE_SECONDS_PER_QUBIT_CYCLE, days)


def decode_table(n_values=(1e12, 1e16, 1e20), layout: str = HALVED) -> dict[tuple[float, str], float]:
    """Processor-days for each (N, regime), with the regime's processor type."""
    out = {}
    for n in n_values:
        for name, reg in REGIMES.items():
            S = toffoli_factory(reg.gate_error, int(n), layout=layout).S
            out[(n, name)] = decode_cost(n, S, REGIME_PROCESSOR[name]).processor_days
    return out


def factory_table(n_values=(1e12, 1e18, 1e24), errors=(1e-3, 1e-4, 1e-5), layout: str = HALVED) -> dict[tuple[float, float], float]:
    """Spacetime per Toffoli state for each (N, gate error)."""
    return {(n, p): toffoli_factory(p, int(n), layout=layout).S for n in n_values for p in errors}
