"""Per-step cost of the backtracking walk operators R_A and R_B.

Every gate inside R_A carries one extra control line (the walk step is
itself controlled), except inside the diffusion map once its flag qubits
are set. Multi-control Toffolis are counted as 2c-3 Toffolis here, the
non-reduced construction.

Values in [k] plus the unassigned symbol are stored in r = ceil(log2(k+1))
bits and indices in 0..n in s = ceil(log2(n+1)) bits.
"""

from __future__ import annotations

import math

from .breakdown import CostBreakdown
from .gadgets import (
    DEFAULT_SYNTHESIS,
    SynthesisModel,
    adder_cost,
    comparator_cost,
    controlled_hadamard_cost,
    cswap_cost,
    ceil_log2,
    mct_cost,
)
from .resources import ZERO, Resources, par, par_all, replicate, seq, seq_all

EC = 1  # extra control line carried by every gate of the walk step
INCREMENT_MAX_BITS = 64


def _mct(c: int, uncompute: bool = False, reduced: bool = False) -> Resources:
    return mct_cost(c, uncompute, reduced=reduced)


def _copies(gate: Resources, count: int) -> Resources:
    return replicate(gate, count) if count > 0 else ZERO


def synthesis_epsilon(T_est: int, n: int) -> float:
    """Per-use synthesis accuracy, the inverse of the number of diffusion uses."""
    return 1.0 / (64.0 * math.sqrt(T_est * n))


def adder_tree_cost(items: int, *, extra_controls: int = EC, reduced: bool = False) -> Resources:
    """Sum ``items`` single bits with a tree of out-of-place adders.

    Level t adds pairs of t-bit numbers; an odd item is carried up unchanged.
    """
    cost = ZERO
    width = 1
    while items > 1:
        pairs = items // 2
        add = adder_cost(min(width, 64), extra_controls=extra_controls, reduced=reduced)
        cost = seq(cost, replicate(add, pairs))
        items -= pairs
        width += 1
    return cost


# ---- conversion, fan-out and miscellaneous steps -------------------------


def conversion_cost(n: int, r: int, s: int, *, reduced: bool = False) -> Resources:
    """One direction of the (index, value) list to assignment-string conversion."""
    fan = Resources(
        t_depth=ceil_log2(n) * _mct(1 + EC, reduced=reduced).t_depth,
        toffoli_count=n * (r + s) * (n - 1) * _mct(1 + EC, reduced=reduced).toffoli_count,
        ancillas=n * (n - 1) * (r + s),
        logical_qubits=n * n * (r + s),
    )
    level_check = _copies(_mct(s + EC, reduced=reduced), math.ceil(n / 2))
    copy_gate = _mct(s + 2 + EC, uncompute=True, reduced=reduced)
    copies = _copies(copy_gate, n * n * r)
    swaps = _copies(cswap_cost(s + r, extra_controls=EC, reduced=reduced), math.ceil(n / 2))
    step2 = seq_all([level_check, par(copies, swaps), level_check])
    xor_tree = Resources(
        t_depth=4 * ceil_log2(n) * _mct(1 + EC, reduced=reduced).t_depth,
        toffoli_count=n * r * 4 * (n - 1) * _mct(1 + EC, reduced=reduced).toffoli_count,
        ancillas=n * r * (n - 1),
    )
    return seq_all([fan, step2, xor_tree, copies, fan])


def fanout_row(n: int, r: int, *, reduced: bool = False) -> Resources:
    """Controlled first copy of each of the n*r bits, both ways; the rest of the tree is free."""
    one_way = _copies(_mct(1 + EC, reduced=reduced), n * r)
    return seq(one_way, one_way)


def increment_step_cost(r: int, s: int, *, reduced: bool = False) -> Resources:
    """Increment or decrement the level register, controlled on a != unassigned.

    An ancilla is set from the r bits of a and the step control, then
    controls the hard-coded in-place increment, then is cleared.
    """
    flag = _mct(r + EC, reduced=reduced)
    inc = adder_cost(min(s, INCREMENT_MAX_BITS), in_place=True, controlled=True, extra_controls=1, reduced=reduced)
    return seq_all([flag, inc, flag])


def other_ops_cost(r: int, s: int, *, reduced: bool = False) -> Resources:
    """Decrement, phase flip on p = F, increment."""
    step = increment_step_cost(r, s, reduced=reduced)
    phase = _mct(2 + EC, reduced=reduced)
    return seq_all([step, phase, step])


def increment_depth_bound(r: int) -> int:
    """Published upper bound 4*ceil(log r) + 47 on one increment step's T-depth."""
    return 4 * ceil_log2(r) + 47


# ---- diffusion --------------------------------------------------------------


def uniform_diffusion_cost(r: int) -> Resources:
    """Reflection about the uniform state on r qubits via controlled Hadamards."""
    if r < 2:
        raise ValueError("r must be >= 2")
    return Resources(t_depth=2 * ceil_log2(r - 1) + 3, t_count=10 * r - 9, ancillas=2 * (r - 2), logical_qubits=r + 1)


def amplified_diffusion_cost(
    states: int, r: int, epsilon: float, synthesis: SynthesisModel = DEFAULT_SYNTHESIS, *, reduced: bool = False
) -> Resources:
    """Reflection about a uniform superposition of ``states`` < 2^r basis states.

    V = -H' U* H'^dag U<= H' prepares the state with one round of exact
    amplitude amplification, and D = V U* V^dag, so D uses six H', three U*
    and two comparisons. Each gate is controlled on one flag qubit.
    """
    i = ceil_log2(states)
    h_prime = par(synthesis_cost_controlled(epsilon, synthesis), replicate(controlled_hadamard_cost(), i))
    u_star = _mct(r + 2, reduced=reduced)
    u_le = comparator_cost(r, extra_controls=1, reduced=reduced)
    return seq_all([h_prime] * 6 + [u_star] * 3 + [u_le] * 2)


def synthesis_cost_controlled(epsilon: float, synthesis: SynthesisModel) -> Resources:
    from .gadgets import synthesis_cost

    return synthesis_cost(epsilon, controlled=True, model=synthesis)


def diffusion_map_cost(
    options: int, r: int, epsilon: float, synthesis: SynthesisModel = DEFAULT_SYNTHESIS, *, reduced: bool = False
) -> Resources:
    """Controlled D over the unassigned symbol plus ``options`` values.

    Uses plain Hadamards when options + 1 is a power of two, otherwise
    amplitude amplification.
    """
    states = options + 1
    if states & (states - 1) == 0:
        return uniform_diffusion_cost(max(r, 2))
    return amplified_diffusion_cost(states, r, epsilon, synthesis, reduced=reduced)


def root_diffusion_cost(
    options: int, r: int, epsilon: float, synthesis: SynthesisModel = DEFAULT_SYNTHESIS, *, reduced: bool = False
) -> Resources:
    """D' at the root: prepare C, D controlled on B and C, then a phase kick between controlled Hadamards."""
    prep = synthesis_cost_controlled(epsilon, synthesis)
    both = _mct(2, reduced=reduced)
    d = diffusion_map_cost(options, r, epsilon, synthesis, reduced=reduced)
    ch = controlled_hadamard_cost()
    phase = _mct(r + 2, reduced=reduced)
    return seq_all([prep, both, d, both, ch, phase, ch])


def _flag_cost(s: int, *, reduced: bool) -> Resources:
    # B <- [level = 0] on s bits; A <- [p = ?] and not B
    return seq(_mct(s + EC, reduced=reduced), _mct(3 + EC, reduced=reduced))


def colouring_diffusion_cost(
    n: int, k: int, T_est: int, *, include_root: bool = True, synthesis: SynthesisModel = DEFAULT_SYNTHESIS, reduced: bool = False
) -> Resources:
    """Diffusion for colouring, where the child count depends on the colours used c.

    A controlled-swap tree of depth r routes the work registers into the
    slot for the current c; every slot applies its own map in parallel.
    """
    r, s = ceil_log2(k + 1), ceil_log2(n + 1)
    eps = synthesis_epsilon(T_est, n)
    flags = _flag_cost(s, reduced=reduced)
    swap_tree = seq_all(
        replicate(cswap_cost(r + 2, reduced=reduced), 2 ** (i - 1)) for i in range(1, r + 1)
    )
    slots = []
    for c in range(1, k + 1):
        options = min(c + 1, k)
        d = diffusion_map_cost(options, r, eps, synthesis, reduced=reduced)
        if include_root:
            d = seq(d, root_diffusion_cost(options, r, eps, synthesis, reduced=reduced))
        slots.append(d)
    return seq_all([flags, swap_tree, par_all(slots), swap_tree, flags])


def sat_diffusion_cost(
    n: int, T_est: int, *, include_root: bool = True, synthesis: SynthesisModel = DEFAULT_SYNTHESIS, reduced: bool = False
) -> Resources:
    """Diffusion for SAT. The fictitious fourth value makes the child set a full 2-bit register."""
    s = ceil_log2(n + 1)
    eps = synthesis_epsilon(T_est, n)
    flags = _flag_cost(s, reduced=reduced)
    d = uniform_diffusion_cost(2)
    parts = [flags, d]
    if include_root:
        parts.append(root_diffusion_cost(3, 2, eps, synthesis, reduced=reduced))
    parts.append(flags)
    return seq_all(parts)


# ---- predicates and heuristics -------------------------------------------


def expected_edges(n: int, p: float = 0.5) -> int:
    return round(p * n * (n - 1) / 2)


def colour_count_cost(n: int, k: int, *, reduced: bool = False) -> Resources:
    """Number of colours used in x, plus prefix-equality flags for each prefix of c."""
    r = ceil_log2(k + 1)
    marks = _copies(_mct(r + EC, reduced=reduced), n * k)
    used = _copies(_mct(n + EC, reduced=reduced), k)
    total = adder_tree_cost(k, reduced=reduced)
    prefixes = par_all(_copies(_mct(i + EC, reduced=reduced), 2**i) for i in range(1, r + 1))
    return seq_all([marks, used, total, prefixes, marks])


def colouring_predicate_cost(n: int, k: int, edges: int, *, reduced: bool = False) -> Resources:
    """P(x) for colouring: any monochromatic edge, else complete or undetermined."""
    r = ceil_log2(k + 1)
    bit_eq = replicate(_mct(1 + EC, reduced=reduced), r)
    edge_check = seq_all([bit_eq, bit_eq, par(_mct(r + EC, reduced=reduced), _mct(r + EC, reduced=reduced)), _mct(2 + EC, reduced=reduced)])
    checks = par(_copies(edge_check, edges), _copies(_mct(r + EC, reduced=reduced), n))
    any_bad = _mct(max(edges, 1) + EC, reduced=reduced)
    complete = _mct(n + 1 + EC, reduced=reduced)
    return seq_all([checks, any_bad, complete, checks])


def colouring_heuristic_cost(n: int, k: int, edges: int, *, reduced: bool = False) -> Resources:
    """h(x): the unassigned vertex with the most distinct neighbour colours, with its internal uncompute."""
    r, s = ceil_log2(k + 1), ceil_log2(n + 1)
    w = ceil_log2(k + 1)
    seen = _copies(_mct(r + EC, reduced=reduced), 2 * edges * k)
    any_nb = _copies(_mct(n + EC, reduced=reduced), n * k)
    sums = replicate(adder_tree_cost(k, reduced=reduced), n)
    mask = seq(replicate(_mct(r + EC, reduced=reduced), n), replicate(_mct(2 + EC, reduced=reduced), n * w))
    level_costs = []
    items = n
    cas = seq(comparator_cost(w, extra_controls=EC, reduced=reduced), cswap_cost(w + s, extra_controls=EC, reduced=reduced))
    while items > 1:
        pairs = items // 2
        level_costs.append(replicate(cas, pairs))
        items -= pairs
    tree = seq_all(level_costs)
    copy_out = replicate(_mct(1 + EC, reduced=reduced), s)
    return seq_all([seen, any_nb, sums, mask, tree, copy_out, tree, mask, sums, any_nb, seen])


def sat_predicate_cost(n: int, k: int, m: int, *, reduced: bool = False) -> Resources:
    """P(x) for SAT with two-bit variables and the fictitious value rejected."""
    clauses = _copies(_mct(k + EC, reduced=reduced), m)
    pair = _mct(2 + EC, reduced=reduced)
    fictitious = seq_all([replicate(pair, n), _mct(n + EC, reduced=reduced), replicate(pair, n)])
    unassigned = replicate(pair, n)
    checks = par_all([clauses, fictitious, unassigned])
    any_bad = _mct(m + 1 + EC, reduced=reduced)
    complete = _mct(n + 1 + EC, reduced=reduced)
    return seq_all([checks, any_bad, complete, checks])


def sat_heuristic_cost(n: int, *, reduced: bool = False) -> Resources:
    """h(x) = level + 1: copy the level register then increment it in place."""
    s = ceil_log2(n + 1)
    copy = replicate(_mct(1 + EC, reduced=reduced), s)
    inc = adder_cost(min(s, INCREMENT_MAX_BITS), in_place=True, controlled=True, extra_controls=EC, reduced=reduced)
    return seq(copy, inc)


# ---- assembled operators -------------------------------------------------


def _check_colouring(n: int, k: int, T_est: int) -> None:
    if k < 2:
        raise ValueError("k must be >= 2")
    if n < k:
        raise ValueError("n must be >= k")
    if T_est < 1:
        raise ValueError("T_est must be >= 1")


def _colouring(
    n: int, k: int, T_est: int, root: bool, edges: int | None, synthesis: SynthesisModel, reduced: bool
) -> CostBreakdown:
    _check_colouring(n, k, T_est)
    r, s = ceil_log2(k + 1), ceil_log2(n + 1)
    e = expected_edges(n) if edges is None else edges
    conv = conversion_cost(n, r, s, reduced=reduced)
    c = colour_count_cost(n, k, reduced=reduced)
    p = colouring_predicate_cost(n, k, e, reduced=reduced)
    h = colouring_heuristic_cost(n, k, e, reduced=reduced)
    name = "R_A" if root else "R_B"
    b = CostBreakdown(f"{name} for {k}-colouring, n={n}", params={"n": n, "k": k, "T_est": T_est, "edges": e, "r": r, "s": s})
    b.add("Conversion", seq(conv, conv), 0)
    b.add("Fan-out / fan-in", fanout_row(n, r, reduced=reduced), 1)
    b.add("Compute c", c, 2)
    b.add("Compute P(x)", p, 2)
    b.add("Compute h(x)", h, 2)
    b.add("Diffusion", colouring_diffusion_cost(n, k, T_est, include_root=root, synthesis=synthesis, reduced=reduced), 3)
    b.add("Uncompute c", c, 4)
    b.add("Uncompute P(x)", p, 4)
    b.add("Uncompute h(x)", h, 4)
    b.add("Other operations", other_ops_cost(r, s, reduced=reduced), 5)
    return b


def ra_cost_colouring(
    n: int, k: int, T_est: int, *, edges: int | None = None, synthesis: SynthesisModel = DEFAULT_SYNTHESIS, reduced: bool = False
) -> CostBreakdown:
    """R_A for k-colouring on n vertices, with ``edges`` defaulting to the G(n, 1/2) mean."""
    return _colouring(n, k, T_est, True, edges, synthesis, reduced)


def rb_cost_colouring(
    n: int, k: int, T_est: int, *, edges: int | None = None, synthesis: SynthesisModel = DEFAULT_SYNTHESIS, reduced: bool = False
) -> CostBreakdown:
    """R_B for k-colouring: R_A without the root diffusion D'."""
    return _colouring(n, k, T_est, False, edges, synthesis, reduced)


def _sat(n: int, k: int, m: int, T_est: int, root: bool, synthesis: SynthesisModel, reduced: bool) -> CostBreakdown:
    if n < 1 or k < 1 or m < 1:
        raise ValueError("n, k and m must be >= 1")
    if k > n:
        raise ValueError("k must not exceed n")
    if T_est < 1:
        raise ValueError("T_est must be >= 1")
    r, s = 2, ceil_log2(n + 1)
    conv = conversion_cost(n, r, s, reduced=reduced)
    p = sat_predicate_cost(n, k, m, reduced=reduced)
    h = sat_heuristic_cost(n, reduced=reduced)
    name = "R_A" if root else "R_B"
    b = CostBreakdown(f"{name} for {k}-SAT, n={n}, m={m}", params={"n": n, "k": k, "m": m, "T_est": T_est, "r": r, "s": s})
    b.add("Conversion", seq(conv, conv), 0)
    b.add("Fan-out / fan-in", fanout_row(n, r, reduced=reduced), 1)
    b.add("Compute P(x)", p, 2)
    b.add("Compute h(x)", h, 2)
    b.add("Diffusion", sat_diffusion_cost(n, T_est, include_root=root, synthesis=synthesis, reduced=reduced), 3)
    b.add("Uncompute P(x)", p, 4)
    b.add("Uncompute h(x)", h, 4)
    b.add("Other operations", other_ops_cost(r, s, reduced=reduced), 5)
    return b


def ra_cost_sat(
    n: int, k: int, m: int, T_est: int, *, synthesis: SynthesisModel = DEFAULT_SYNTHESIS, reduced: bool = False
) -> CostBreakdown:
    """R_A for k-SAT with n variables and m clauses."""
    return _sat(n, k, m, T_est, True, synthesis, reduced)


def rb_cost_sat(
    n: int, k: int, m: int, T_est: int, *, synthesis: SynthesisModel = DEFAULT_SYNTHESIS, reduced: bool = False
) -> CostBreakdown:
    """R_B for k-SAT: R_A without the root diffusion D'."""
    return _sat(n, k, m, T_est, False, synthesis, reduced)
