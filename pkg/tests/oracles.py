"""Independent reference implementations used as test oracles.

Nothing here imports the search kernels: each oracle is a direct,
slow restatement of the definition.
"""

from __future__ import annotations

import itertools
import math

import numpy as np
from fractions import Fraction


def brute_chromatic(n: int, edges) -> int:
    """Smallest k admitting a proper colouring, by trying every assignment."""
    if n == 0:
        return 0
    edges = list(edges)
    for k in range(1, n + 1):
        # fix vertex 0 to colour 0 to cut symmetric copies
        for rest in itertools.product(range(k), repeat=n - 1):
            col = (0,) + rest
            if all(col[u] != col[v] for u, v in edges):
                return k
    return n


def brute_max_clique(n: int, edges) -> int:
    adj = {(u, v) for u, v in edges} | {(v, u) for u, v in edges}
    best = 1 if n else 0
    for size in range(2, n + 1):
        if any(all((a, b) in adj for a, b in itertools.combinations(s, 2)) for s in itertools.combinations(range(n), size)):
            best = size
        else:
            break
    return best


def truth_table_sat(n: int, clauses) -> bool:
    """Satisfiability by enumerating all 2^n assignments."""
    for bits in itertools.product((False, True), repeat=n):
        if all(any((lit > 0) == bits[abs(lit) - 1] for lit in c) for c in clauses):
            return True
    return False


def truth_table_sat_np(n: int, clauses) -> bool:
    """Vectorised truth-table satisfiability over all 2^n assignments."""
    bits = (np.arange(2**n)[:, None] >> np.arange(n)[None, :]) & 1
    bits = bits.astype(bool)
    alive = np.ones(2**n, dtype=bool)
    for c in clauses:
        sat = np.zeros(2**n, dtype=bool)
        for lit in c:
            col = bits[:, abs(lit) - 1]
            sat |= col if lit > 0 else ~col
        alive &= sat
        if not alive.any():
            return False
    return bool(alive.any())


def binom_sf_exact(L: int, K: int, p: Fraction) -> Fraction:
    """P[X >= L] for X ~ Bin(K, p), in exact rationals."""
    return sum((Fraction(math.comb(K, i)) * p**i * (1 - p) ** (K - i) for i in range(max(L, 0), K + 1)), Fraction(0))


def binom_cdf_exact(x: int, K: int, p: Fraction) -> Fraction:
    """P[X <= x] for X ~ Bin(K, p), in exact rationals."""
    return 1 - binom_sf_exact(x + 1, K, p)


def reference_dsatur_chromatic(n: int, edges) -> int:
    """Plain recursive DSATUR branch and bound, without clique seeding."""
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    colour = [0] * n
    best = [n + 1]

    def pick():
        cand = [v for v in range(n) if colour[v] == 0]
        return max(cand, key=lambda v: (len({colour[u] for u in adj[v]} - {0}), len(adj[v]), -v))

    def rec(coloured: int, used: int):
        if used >= best[0]:
            return
        if coloured == n:
            best[0] = used
            return
        v = pick()
        banned = {colour[u] for u in adj[v]}
        for c in range(1, min(used + 1, best[0] - 1) + 1):
            if c in banned:
                continue
            colour[v] = c
            rec(coloured + 1, max(used, c))
            colour[v] = 0

    if n == 0:
        return 0
    rec(0, 0)
    return best[0]
