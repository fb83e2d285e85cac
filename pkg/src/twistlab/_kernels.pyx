# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled breadth-first relation search over 2x2 int64 matrices.

Same contract and visiting order as ``_kernels_py.bfs_relation``.  Any
product that would leave int64 reports status OVERFLOW so the caller can
redo the search with Python integers.
"""

import numpy as np

cdef extern from *:
    """
    static inline int tl_mul(long long a, long long b, long long *r) { return __builtin_mul_overflow(a, b, r); }
    static inline int tl_add(long long a, long long b, long long *r) { return __builtin_add_overflow(a, b, r); }
    """
    int tl_mul(long long a, long long b, long long *r) nogil
    int tl_add(long long a, long long b, long long *r) nogil

cdef enum:
    NONE = 0
    FOUND = 1
    OVERFLOW = 2
    BUDGET = 3


cdef inline unsigned long long _mix(long long a, long long b, long long c, long long d) nogil:
    cdef unsigned long long h = 1469598103934665603ULL
    h = (h ^ <unsigned long long>a) * 1099511628211ULL
    h = (h ^ <unsigned long long>b) * 1099511628211ULL
    h = (h ^ <unsigned long long>c) * 1099511628211ULL
    h = (h ^ <unsigned long long>d) * 1099511628211ULL
    return h ^ (h >> 31)


cdef inline int _dot(long long p, long long q, long long r, long long t, long long *out) nogil:
    # out = p*q + r*t
    cdef long long x, y
    if tl_mul(p, q, &x) or tl_mul(r, t, &y) or tl_add(x, y, out):
        return 1
    return 0


def _path(long long[::1] parent, int[::1] letter, long long node):
    out = []
    while node:
        out.append(letter[node])
        node = parent[node]
    out.reverse()
    return out


def bfs_relation(long long[:, ::1] mats, int depth, long long max_nodes):
    """Returns ``(status, word_a, word_b, nodes)``; see the Python twin."""
    cdef Py_ssize_t L = mats.shape[0]
    cdef long long cap = 1, layer = 1
    cdef int d
    for d in range(depth):
        layer = L if d == 0 else layer * (L - 1)
        cap += layer
        if cap > max_nodes:
            break
    cdef bint budget_bound = cap > max_nodes
    if budget_bound:
        cap = max_nodes
    if cap < 1:
        cap = 1
    cdef long long tsize = 1
    while tsize < 2 * cap:
        tsize <<= 1
    cdef unsigned long long mask = tsize - 1

    ent_arr = np.empty((cap, 4), dtype=np.int64)
    parent_arr = np.zeros(cap, dtype=np.int64)
    letter_arr = np.zeros(cap, dtype=np.int32)
    table_arr = np.full(tsize, -1, dtype=np.int64)
    cdef long long[:, ::1] ent = ent_arr
    cdef long long[::1] parent = parent_arr
    cdef int[::1] letter = letter_arr
    cdef long long[::1] table = table_arr

    ent[0, 0] = 1; ent[0, 1] = 0; ent[0, 2] = 0; ent[0, 3] = 1
    table[_mix(1, 0, 0, 1) & mask] = 0
    cdef long long count = 1, start = 0, end = 1, u, v
    cdef Py_ssize_t l
    cdef long long a, b, c, e
    cdef unsigned long long h
    cdef int status = NONE
    cdef long long hit_u = 0, hit_v = 0
    cdef int hit_l = 0

    with nogil:
        for d in range(depth):
            for u in range(start, end):
                for l in range(L):
                    if u != 0 and l == (letter[u] ^ 1):
                        continue
                    if (_dot(ent[u, 0], mats[l, 0], ent[u, 1], mats[l, 2], &a)
                            or _dot(ent[u, 0], mats[l, 1], ent[u, 1], mats[l, 3], &b)
                            or _dot(ent[u, 2], mats[l, 0], ent[u, 3], mats[l, 2], &c)
                            or _dot(ent[u, 2], mats[l, 1], ent[u, 3], mats[l, 3], &e)):
                        status = OVERFLOW
                        break
                    h = _mix(a, b, c, e) & mask
                    while True:
                        v = table[h]
                        if v < 0:
                            break
                        if ent[v, 0] == a and ent[v, 1] == b and ent[v, 2] == c and ent[v, 3] == e:
                            break
                        h = (h + 1) & mask
                    if v >= 0:
                        status = FOUND
                        hit_u = u; hit_l = <int>l; hit_v = v
                        break
                    if count >= cap:
                        status = BUDGET
                        break
                    ent[count, 0] = a; ent[count, 1] = b; ent[count, 2] = c; ent[count, 3] = e
                    parent[count] = u
                    letter[count] = <int>l
                    table[h] = count
                    count += 1
                if status != NONE:
                    break
            if status != NONE:
                break
            start = end
            end = count

    if status == FOUND:
        return (FOUND, _path(parent, letter, hit_u) + [hit_l], _path(parent, letter, hit_v), count)
    return (status, None, None, count)
