"""DSATUR colouring and static-order SAT backtracking with tree instrumentation.

A node is counted at every invocation of the recursive step, including the
root and leaves that are rejected immediately.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..instances import CnfFormula, Graph
from .backend import get_kernels


@dataclass(frozen=True)
class TreeStats:
    """Search-tree instrumentation.

    Attributes:
        nodes: Recursive calls made, root included.
        found: Whether a solution (or, in chromatic mode, any colouring) was found.
        witness: Colouring (1-based colours) or truth assignment when found.
        aborted: True if the node limit stopped the search early.
    """

    nodes: int
    found: bool
    witness: Optional[tuple] = None
    aborted: bool = False

    def __post_init__(self):
        if self.nodes < 1:
            raise ValueError("a search visits at least one node")
        if self.found != (self.witness is not None):
            raise ValueError("witness must be present exactly when found")


@dataclass(frozen=True)
class ColouringResult:
    """Outcome of a DSATUR run.

    ``chromatic`` is set in chromatic mode; ``colourable`` in k mode.
    """

    stats: TreeStats
    clique: tuple[int, ...]
    chromatic: Optional[int] = None
    colourable: Optional[bool] = None


def greedy_clique(g: Graph) -> list[int]:
    """Grow a clique by repeatedly adding the highest-degree vertex adjacent to all chosen.

    Ties go to the lowest vertex id. Returns [] only for the empty graph.
    """
    if g.n == 0:
        return []
    adj = g.adjacency()
    deg = [len(a) for a in adj]
    clique: list[int] = []
    candidates = set(range(g.n))
    while candidates:
        v = max(candidates, key=lambda u: (deg[u], -u))
        clique.append(v)
        candidates &= adj[v]
    return clique


def _prepare(g: Graph):
    indptr, indices = g.to_csr()
    degree = np.diff(indptr).astype(np.int32)
    return indptr, indices, degree


def dsatur(
    g: Graph,
    mode: str = "chromatic",
    k: int | None = None,
    *,
    prune: bool = True,
    node_limit: int = 0,
    backend: str | None = None,
) -> ColouringResult:
    """Exact DSATUR colouring.

    Args:
        g: Graph to colour.
        mode: "chromatic" finds the chromatic number by branch and bound;
            "k" decides k-colourability and halts on the first colouring.
        k: Number of colours in "k" mode. In chromatic mode an optional
            cap: colourings using more than k colours are rejected, so with
            k = chi the search both finds a chi-colouring and refutes chi-1.
        prune: Skip colours already used by a neighbour. With prune=False,
            such children are generated and rejected, which is the
            simplified variant used as the quantum tree proxy.
        node_limit: Abort after this many nodes (0 = unlimited).
        backend: Force "cython" or "python" kernels.
    """
    if mode not in ("chromatic", "k"):
        raise ValueError("mode must be 'chromatic' or 'k'")
    if mode == "k" and k is None:
        raise ValueError("k mode needs k")
    if k is not None and k < 1:
        raise ValueError("k must be >= 1")
    kern = get_kernels(backend)
    if g.n == 0:
        stats = TreeStats(1, True, ())
        return ColouringResult(stats, (), chromatic=0 if mode == "chromatic" else None, colourable=True if mode == "k" else None)
    clique = tuple(greedy_clique(g))
    q = len(clique)
    if k is not None and q > k:
        if mode == "k":
            return ColouringResult(TreeStats(1, False), clique, colourable=False)
        return ColouringResult(TreeStats(1, False), clique)
    init = np.zeros(g.n, dtype=np.int32)
    for i, v in enumerate(clique):
        init[v] = i + 1
    indptr, indices, degree = _prepare(g)
    limit = g.n if k is None else min(k, g.n)
    nodes, best, aborted, witness = kern.dsatur_search(
        g.n, indptr, indices, degree, init, limit, mode == "chromatic", prune, q, node_limit
    )
    found = best > 0
    stats = TreeStats(int(nodes), found, tuple(int(x) for x in witness) if found else None, bool(aborted))
    if mode == "chromatic":
        return ColouringResult(stats, clique, chromatic=int(best) if found and not aborted else None)
    return ColouringResult(stats, clique, colourable=found if (found or not aborted) else None)


def dsatur_simplified(g: Graph, k: int, *, node_limit: int = 0, backend: str | None = None) -> ColouringResult:
    """k-colourability without neighbour-colour pruning."""
    return dsatur(g, "k", k, prune=False, node_limit=node_limit, backend=backend)


def is_proper_colouring(g: Graph, colours) -> bool:
    return all(colours[u] != colours[v] for u, v in g.edges) and all(c >= 1 for c in colours)


def variable_order(f: CnfFormula) -> list[int]:
    """Variables by decreasing appearance count, ties to the lowest index."""
    counts = f.appearance_counts()
    return sorted(range(f.n), key=lambda v: (-counts[v], v))


def _sat_tables(f: CnfFormula, order: list[int]):
    """Clause tries keyed by the last literal's position and falsifying value.

    Literals are (position, falsifying value) pairs, with value 0 for a
    positive literal and 1 for a negated one. Each trie node's children are
    stored contiguously, so the layout is a breadth-first flattening.
    """
    pos_of = [0] * f.n
    for p, v in enumerate(order):
        pos_of[v] = p
    tries: list[dict | None] = [None] * (2 * f.n)
    for clause in f.clauses:
        lits = sorted(((pos_of[abs(x) - 1], 0 if x > 0 else 1) for x in clause), reverse=True)
        (last, fval), rest = lits[0], lits[1:]
        node = tries[2 * last + fval]
        if node is None:
            node = tries[2 * last + fval] = {}
        for lit in rest:
            node = node.setdefault(lit, {})
        node[None] = True
    node_pos, node_false, node_term, first_child, n_child = [], [], [], [], []
    bucket_root = []
    queue: list[dict] = []

    def add(key, sub):
        node_pos.append(key[0])
        node_false.append(key[1])
        node_term.append(1 if None in sub else 0)
        first_child.append(0)
        n_child.append(0)
        queue.append(sub)

    for b, trie in enumerate(tries):
        if trie is None:
            bucket_root.append(-1)
            continue
        bucket_root.append(len(node_pos))
        add((b // 2, b % 2), trie)
    head = 0
    while head < len(queue):
        sub = queue[head]
        kids = sorted(k for k in sub if k is not None)
        first_child[head] = len(node_pos)
        n_child[head] = len(kids)
        for key in kids:
            add(key, sub[key])
        head += 1
    i32 = lambda xs: np.asarray(xs, dtype=np.int32)
    i8 = lambda xs: np.asarray(xs, dtype=np.int8)
    return (i32(bucket_root), i32(first_child), i32(n_child), i32(node_pos), i8(node_false), i8(node_term))


def sat_backtrack(f: CnfFormula, *, node_limit: int = 0, backend: str | None = None) -> tuple[bool, TreeStats]:
    """Static-order backtracking: branch on variables by appearance count, False first.

    A partial assignment is rejected as soon as a clause has all its
    literals false. The search halts at the first complete assignment.
    """
    if any(len(c) == 0 for c in f.clauses):
        return False, TreeStats(1, False)
    kern = get_kernels(backend)
    order = variable_order(f)
    tables = _sat_tables(f, order)
    nodes, found, aborted, vals = kern.sat_search(f.n, *tables, node_limit)
    witness = None
    if found:
        assignment = [False] * f.n
        for p, v in enumerate(order):
            assignment[v] = bool(vals[p])
        witness = tuple(assignment)
    return bool(found), TreeStats(int(nodes), bool(found), witness, bool(aborted))
