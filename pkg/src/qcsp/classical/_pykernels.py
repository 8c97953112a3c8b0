"""Pure-Python backtracking kernels, used when the compiled module is absent."""

from __future__ import annotations

import sys

import numpy as np


def dsatur_search(n, indptr, indices, degree, init_colour, limit, chromatic, prune, lower, node_limit=0):
    """Same contract as the compiled ``dsatur_search``."""
    indptr = [int(x) for x in indptr]
    indices = [int(x) for x in indices]
    nbrs = [indices[indptr[v] : indptr[v + 1]] for v in range(n)]
    degree = [int(x) for x in degree]
    colour = [0] * n
    sat = [0] * n
    count = [[0] * (limit + 2) for _ in range(n)]
    witness = np.zeros(n, dtype=np.int32)
    st = {"nodes": 0, "best": limit + 1, "stop": False, "aborted": False}

    def assign(v, c):
        colour[v] = c
        for u in nbrs[v]:
            row = count[u]
            row[c] += 1
            if row[c] == 1:
                sat[u] += 1

    def unassign(v, c):
        colour[v] = 0
        for u in nbrs[v]:
            row = count[u]
            row[c] -= 1
            if row[c] == 0:
                sat[u] -= 1

    def select():
        best_v, best_key = -1, None
        for v in range(n):
            if colour[v]:
                continue
            key = (sat[v], degree[v])
            if best_key is None or key > best_key:
                best_v, best_key = v, key
        return best_v

    def rec(n_coloured, c_used, invalid):
        st["nodes"] += 1
        if node_limit > 0 and st["nodes"] >= node_limit:
            st["aborted"] = st["stop"] = True
            return
        if invalid:
            return
        if chromatic and c_used >= st["best"]:
            return
        if n_coloured == n:
            witness[:] = colour
            st["best"] = c_used
            if not chromatic or c_used <= lower:
                st["stop"] = True
            return
        v = select()
        c = 1
        while True:
            cap = min(c_used + 1, st["best"] - 1 if chromatic else limit)
            if c > cap:
                break
            conflict = count[v][c] > 0
            if not (conflict and prune):
                assign(v, c)
                rec(n_coloured + 1, max(c, c_used), conflict)
                unassign(v, c)
                if st["stop"]:
                    return
            c += 1

    c_used = n_coloured = 0
    for v in range(n):
        c = int(init_colour[v])
        if c > 0:
            assign(v, c)
            n_coloured += 1
            c_used = max(c_used, c)
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * n + 1000))
    try:
        rec(n_coloured, c_used, False)
    finally:
        sys.setrecursionlimit(old)
    best = st["best"] if st["best"] <= limit else 0
    return st["nodes"], best, st["aborted"], witness


def sat_search(n, bucket_root, first_child, n_child, node_pos, node_false, node_term, node_limit=0):
    """Same contract as the compiled ``sat_search``."""
    bucket_root = [int(x) for x in bucket_root]
    first_child = [int(x) for x in first_child]
    n_child = [int(x) for x in n_child]
    node_pos = [int(x) for x in node_pos]
    node_false = [int(x) for x in node_false]
    node_term = [bool(x) for x in node_term]
    val = [-1] * (n + 1)
    st = {"nodes": 0, "found": False, "stop": False, "aborted": False}

    def hit(t):
        if node_term[t]:
            return True
        for c in range(first_child[t], first_child[t] + n_child[t]):
            if val[node_pos[c]] == node_false[c] and hit(c):
                return True
        return False

    def rec(depth):
        st["nodes"] += 1
        if node_limit > 0 and st["nodes"] >= node_limit:
            st["aborted"] = st["stop"] = True
            return
        if depth > 0:
            root = bucket_root[2 * (depth - 1) + val[depth - 1]]
            if root >= 0 and hit(root):
                return
        if depth == n:
            st["found"] = st["stop"] = True
            return
        for v in (0, 1):
            val[depth] = v
            rec(depth + 1)
            if st["stop"]:
                return
        val[depth] = -1

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * n + 1000))
    try:
        rec(0)
    finally:
        sys.setrecursionlimit(old)
    return st["nodes"], st["found"], st["aborted"], np.array(val[:n], dtype=np.int8)
