# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled backtracking kernels. Semantics match _pykernels exactly."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, calloc, free

cnp.import_array()


cdef struct ColState:
    int n
    int *indptr
    int *indices
    int *degree
    int *colour
    int *sat
    int *count          # count[v * stride + c]: neighbours of v with colour c
    int stride
    int limit
    int lower
    int best
    bint chromatic
    bint prune
    bint stop
    bint aborted
    long long nodes
    long long node_limit
    int *witness


cdef inline void _assign(ColState *s, int v, int c) nogil:
    cdef int j, u
    s.colour[v] = c
    for j in range(s.indptr[v], s.indptr[v + 1]):
        u = s.indices[j]
        s.count[u * s.stride + c] += 1
        if s.count[u * s.stride + c] == 1:
            s.sat[u] += 1


cdef inline void _unassign(ColState *s, int v, int c) nogil:
    cdef int j, u
    s.colour[v] = 0
    for j in range(s.indptr[v], s.indptr[v + 1]):
        u = s.indices[j]
        s.count[u * s.stride + c] -= 1
        if s.count[u * s.stride + c] == 0:
            s.sat[u] -= 1


cdef inline int _select(ColState *s) nogil:
    cdef int v, best_v = -1, best_sat = -1, best_deg = -1
    for v in range(s.n):
        if s.colour[v] != 0:
            continue
        if s.sat[v] > best_sat or (s.sat[v] == best_sat and s.degree[v] > best_deg):
            best_v = v
            best_sat = s.sat[v]
            best_deg = s.degree[v]
    return best_v


cdef void _colour_rec(ColState *s, int n_coloured, int c_used, bint invalid) nogil:
    cdef int v, c, cap, i
    cdef bint conflict
    s.nodes += 1
    if s.node_limit > 0 and s.nodes >= s.node_limit:
        s.aborted = True
        s.stop = True
        return
    if invalid:
        return
    if s.chromatic and c_used >= s.best:
        return
    if n_coloured == s.n:
        for i in range(s.n):
            s.witness[i] = s.colour[i]
        if s.chromatic:
            s.best = c_used
            if s.best <= s.lower:
                s.stop = True
        else:
            s.best = c_used
            s.stop = True
        return
    v = _select(s)
    c = 1
    while True:
        cap = c_used + 1
        if s.chromatic:
            if cap > s.best - 1:
                cap = s.best - 1
        elif cap > s.limit:
            cap = s.limit
        if c > cap:
            break
        conflict = s.count[v * s.stride + c] > 0
        if not (conflict and s.prune):
            _assign(s, v, c)
            _colour_rec(s, n_coloured + 1, c if c > c_used else c_used, conflict)
            _unassign(s, v, c)
            if s.stop:
                return
        c += 1


def dsatur_search(int n, int[::1] indptr, int[::1] indices, int[::1] degree,
                  int[::1] init_colour, int limit, bint chromatic, bint prune,
                  int lower, long long node_limit=0):
    """Run the DSATUR recursion from a partial colouring.

    Returns (nodes, best, aborted, witness). ``best`` is the number of
    colours of the best complete colouring found, or 0 if none was found.
    """
    cdef ColState s
    cdef int v, c, c_used = 0, n_coloured = 0
    cdef cnp.ndarray[cnp.int32_t, ndim=1] witness = np.zeros(n, dtype=np.int32)
    s.n = n
    s.indptr = &indptr[0]
    s.indices = &indices[0] if indices.shape[0] > 0 else NULL
    s.degree = &degree[0] if n > 0 else NULL
    s.stride = limit + 2
    s.limit = limit
    s.lower = lower
    s.best = limit + 1
    s.chromatic = chromatic
    s.prune = prune
    s.stop = False
    s.aborted = False
    s.nodes = 0
    s.node_limit = node_limit
    s.witness = <int *> witness.data if n > 0 else NULL
    s.colour = <int *> calloc(n + 1, sizeof(int))
    s.sat = <int *> calloc(n + 1, sizeof(int))
    s.count = <int *> calloc((n + 1) * s.stride, sizeof(int))
    if s.colour == NULL or s.sat == NULL or s.count == NULL:
        free(s.colour); free(s.sat); free(s.count)
        raise MemoryError()
    try:
        for v in range(n):
            c = init_colour[v]
            if c > 0:
                _assign(&s, v, c)
                n_coloured += 1
                if c > c_used:
                    c_used = c
        with nogil:
            _colour_rec(&s, n_coloured, c_used, False)
    finally:
        free(s.colour); free(s.sat); free(s.count)
    best = s.best if s.best <= limit else 0
    return s.nodes, best, bool(s.aborted), witness


cdef struct SatState:
    int n
    int *bucket_root    # trie root for bucket (d, v) at index 2d + v, -1 if empty
    int *first_child
    int *n_child
    int *node_pos
    signed char *node_false
    signed char *node_term
    signed char *val
    bint found
    bint stop
    bint aborted
    long long nodes
    long long node_limit


cdef bint _trie_hit(SatState *s, int t) nogil:
    # True if some clause below trie node t has all its literals false
    cdef int c, end
    if s.node_term[t]:
        return True
    end = s.first_child[t] + s.n_child[t]
    for c in range(s.first_child[t], end):
        if s.val[s.node_pos[c]] == s.node_false[c] and _trie_hit(s, c):
            return True
    return False


cdef void _sat_rec(SatState *s, int depth) nogil:
    cdef int v, root
    s.nodes += 1
    if s.node_limit > 0 and s.nodes >= s.node_limit:
        s.aborted = True
        s.stop = True
        return
    if depth > 0:
        root = s.bucket_root[2 * (depth - 1) + s.val[depth - 1]]
        if root >= 0 and _trie_hit(s, root):
            return
    if depth == s.n:
        s.found = True
        s.stop = True
        return
    for v in range(2):
        s.val[depth] = v
        _sat_rec(s, depth + 1)
        if s.stop:
            return
    s.val[depth] = -1


def sat_search(int n, int[::1] bucket_root, int[::1] first_child, int[::1] n_child,
               int[::1] node_pos, signed char[::1] node_false, signed char[::1] node_term,
               long long node_limit=0):
    """Depth-first search over positions 0..n-1, value 0 before 1.

    Clauses are grouped by the position and falsifying value of their last
    literal, and each group is stored as a trie over the remaining literals
    in decreasing position order.

    Returns (nodes, found, aborted, values) with values indexed by position.
    """
    cdef SatState s
    cdef cnp.ndarray[cnp.int8_t, ndim=1] val = np.full(n + 1, -1, dtype=np.int8)
    s.n = n
    s.bucket_root = &bucket_root[0] if bucket_root.shape[0] > 0 else NULL
    s.first_child = &first_child[0] if first_child.shape[0] > 0 else NULL
    s.n_child = &n_child[0] if n_child.shape[0] > 0 else NULL
    s.node_pos = &node_pos[0] if node_pos.shape[0] > 0 else NULL
    s.node_false = &node_false[0] if node_false.shape[0] > 0 else NULL
    s.node_term = &node_term[0] if node_term.shape[0] > 0 else NULL
    s.val = <signed char *> val.data
    s.found = False
    s.stop = False
    s.aborted = False
    s.nodes = 0
    s.node_limit = node_limit
    with nogil:
        _sat_rec(&s, 0)
    return s.nodes, bool(s.found), bool(s.aborted), val[:n].copy()
