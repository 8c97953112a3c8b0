"""Random instance generators and analytic instance parameters.

Randomness comes from numpy's Philox counter-based generator keyed by
``SeedSequence([seed, index])``. The same (seed, index) pair yields the same
instance on every platform, and instances in a batch can be generated in any
order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


def make_rng(seed: int, index: int = 0) -> np.random.Generator:
    """Philox stream for instance ``index`` of a batch seeded with ``seed``."""
    if seed < 0 or index < 0:
        raise ValueError("seed and index must be non-negative")
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, index])))


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1. Edges are stored as (u, v) with u < v."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")
        norm = set()
        for e in self.edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        edges = list(edges)
        keyed = {(min(u, v), max(u, v)) for u, v in edges}
        if len(keyed) != len(edges):
            raise ValueError("duplicate edge")
        return cls(n, frozenset(keyed))

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def to_csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Adjacency as CSR arrays (indptr, indices) with sorted neighbour lists."""
        adj = self.adjacency()
        indptr = np.zeros(self.n + 1, dtype=np.int32)
        indptr[1:] = np.cumsum([len(a) for a in adj])
        indices = np.fromiter((v for a in adj for v in sorted(a)), dtype=np.int32, count=int(indptr[-1]))
        return indptr, indices


@dataclass(frozen=True)
class CnfFormula:
    """CNF formula over variables 0..n-1.

    Literals use the DIMACS sign convention: variable v appears as v+1
    (positive) or -(v+1) (negated). Generated formulas have exactly k
    literals per clause; parsed files may have narrower clauses.
    """

    n: int
    k: int
    clauses: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.n < 0 or self.k < 0:
            raise ValueError("n and k must be non-negative")
        clauses = tuple(tuple(int(x) for x in c) for c in self.clauses)
        for c in clauses:
            vars_ = [abs(x) - 1 for x in c]
            if any(x == 0 for x in c):
                raise ValueError("literal 0 is not allowed")
            if len(set(vars_)) != len(vars_):
                raise ValueError(f"clause {c} repeats a variable")
            if len(c) > self.k:
                raise ValueError(f"clause {c} is wider than k={self.k}")
            if any(v >= self.n for v in vars_):
                raise ValueError(f"clause {c} references a variable >= n={self.n}")
        object.__setattr__(self, "clauses", clauses)

    @property
    def m(self) -> int:
        return len(self.clauses)

    def appearance_counts(self) -> list[int]:
        counts = [0] * self.n
        for c in self.clauses:
            for x in c:
                counts[abs(x) - 1] += 1
        return counts

    def evaluate(self, assignment: Sequence[bool]) -> bool:
        return all(any((x > 0) == bool(assignment[abs(x) - 1]) for x in c) for c in self.clauses)


def gen_gnp(n: int, p: float, seed: int, index: int = 0) -> Graph:
    """Erdos-Renyi G(n, p): each pair (i < j), in lexicographic order, is kept with probability p."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must be in [0, 1]")
    iu, ju = np.triu_indices(n, k=1)
    keep = make_rng(seed, index).random(iu.size) < p
    return Graph(n, frozenset(zip(iu[keep].tolist(), ju[keep].tolist())))


def gen_ksat(n: int, k: int, m: int, seed: int, index: int = 0) -> CnfFormula:
    """m clauses drawn i.i.d. from the 2^k C(n, k) clauses on distinct variables.

    Variables come from a partial Fisher-Yates shuffle (k swaps per clause),
    vectorised over clauses; polarities are independent fair coins.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > n:
        raise ValueError(f"k={k} exceeds n={n}")
    if m < 0:
        raise ValueError("m must be non-negative")
    rng = make_rng(seed, index)
    if m == 0:
        return CnfFormula(n, k, ())
    perm = np.tile(np.arange(n, dtype=np.int64), (m, 1))
    rows = np.arange(m)
    for i in range(k):
        j = i + rng.integers(0, n - i, size=m)
        tmp = perm[rows, i].copy()
        perm[rows, i] = perm[rows, j]
        perm[rows, j] = tmp
    chosen = np.sort(perm[:, :k], axis=1)
    signs = np.where(rng.integers(0, 2, size=(m, k)) == 1, 1, -1)
    lits = (chosen + 1) * signs
    return CnfFormula(n, k, tuple(map(tuple, lits.tolist())))


def chromatic_estimate(n: int) -> float:
    """Typical chromatic number of G(n, 1/2): n / (2 log2 n - 2 log2 log2 n - 1)."""
    if n < 4:
        raise ValueError("chromatic_estimate needs n >= 4")
    lg = math.log2(n)
    return n / (2 * lg - 2 * math.log2(lg) - 1)


def colour_count(n: int) -> int:
    """Integer number of colours used for estimates: the estimate rounded up."""
    return math.ceil(chromatic_estimate(n))


# Satisfiability thresholds used for instance generation.
KSAT_THRESHOLDS = {
    3: 4.27,
    4: 9.93,
    5: 21.12,
    6: 43.37,
    7: 87.79,
    8: 176.54,
    9: 354.01,
    10: 708.92,
    11: 1418.71,
    12: 2838.28,
    13: 5677.41,
    14: 11355.67,
    15: 22712.20,
}


def threshold_bracket(k: int) -> tuple[float, float]:
    """Leading-order bounds on the k-SAT threshold, without the o(1) terms."""
    base = 2**k * math.log(2)
    return base - 1.5 * math.log(2), base - (1 + math.log(2)) / 2


def ksat_threshold(k: int) -> float:
    """Clause density alpha_k at the satisfiability threshold.

    Tabulated for 3 <= k <= 15; larger k use the midpoint of the asymptotic
    bracket (see :func:`threshold_is_approximate`).
    """
    if k < 3:
        raise ValueError("k must be >= 3")
    if k in KSAT_THRESHOLDS:
        return KSAT_THRESHOLDS[k]
    lo, hi = threshold_bracket(k)
    return (lo + hi) / 2


def threshold_is_approximate(k: int) -> bool:
    return k not in KSAT_THRESHOLDS


def clause_count(n: int, k: int, rounding: str = "round") -> int:
    """Number of clauses at the threshold, alpha_k * n rounded or ceiled."""
    x = ksat_threshold(k) * n
    if rounding == "round":
        return int(round(x))
    if rounding == "ceil":
        return math.ceil(x)
    raise ValueError("rounding must be 'round' or 'ceil'")
