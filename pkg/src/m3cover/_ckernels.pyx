# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops.  Semantics mirror ``m3cover._pykernels`` exactly."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t

cnp.import_array()

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

cdef enum:
    INF = 1 << 30


cdef inline int union_count(const uint64_t[:, ::1] m, Py_ssize_t i, Py_ssize_t j,
                            Py_ssize_t k, Py_ssize_t W) nogil:
    cdef int c = 0
    cdef Py_ssize_t w
    for w in range(W):
        c += __builtin_popcountll(m[i, w] | m[j, w] | m[k, w])
    return c


cdef inline int pair_count(const uint64_t[:, ::1] m, Py_ssize_t i, Py_ssize_t j,
                           Py_ssize_t W) nogil:
    cdef int c = 0
    cdef Py_ssize_t w
    for w in range(W):
        c += __builtin_popcountll(m[i, w] | m[j, w])
    return c


def best_triple(const uint64_t[:, ::1] masks, int total, int msize):
    """Maximum union size over i <= j <= k; first maximiser in lexicographic order."""
    cdef Py_ssize_t N = masks.shape[0], W = masks.shape[1]
    cdef Py_ssize_t i, j, k
    cdef int best = -1, c, pc
    cdef Py_ssize_t bi = -1, bj = -1, bk = -1
    with nogil:
        for i in range(N):
            if best >= total:
                break
            pc = pair_count(masks, i, i, W)
            if pc + 2 * msize <= best:
                continue
            for j in range(i, N):
                pc = pair_count(masks, i, j, W)
                if pc + msize <= best:
                    continue
                for k in range(j, N):
                    c = union_count(masks, i, j, k, W)
                    if c > best:
                        best = c
                        bi = i
                        bj = j
                        bk = k
                        if best >= total:
                            break
                if best >= total:
                    break
    return best, bi, bj, bk


cdef inline bint lex_less(Py_ssize_t a, Py_ssize_t b, Py_ssize_t c,
                          const int[:, ::1] wit, Py_ssize_t s) nogil:
    if a != wit[s, 0]:
        return a < wit[s, 0]
    if b != wit[s, 1]:
        return b < wit[s, 1]
    return c < wit[s, 2]


def triple_profile(const uint64_t[:, ::1] masks, const uint64_t[::1] link_mask,
                   const int64_t[::1] dangling_ids, int link_count):
    """Minimum uncovered half-units per boundary state over all ordered triples."""
    cdef Py_ssize_t N = masks.shape[0], W = masks.shape[1]
    cdef Py_ssize_t D = dangling_ids.shape[0]
    cdef Py_ssize_t S = 1 << (3 * D)
    weight_arr = np.full(S, INF, dtype=np.int32)
    wit_arr = np.full((S, 3), -1, dtype=np.int32)
    cdef int[::1] weight = weight_arr
    cdef int[:, ::1] wit = wit_arr
    cdef Py_ssize_t i, j, k, w, d, p, s
    cdef int covered_links, covered_dang, uncovered
    cdef uint64_t u
    cdef Py_ssize_t t[3]
    cdef Py_ssize_t perms[6][3]
    perms[0][0] = 0; perms[0][1] = 1; perms[0][2] = 2
    perms[1][0] = 0; perms[1][1] = 2; perms[1][2] = 1
    perms[2][0] = 1; perms[2][1] = 0; perms[2][2] = 2
    perms[3][0] = 1; perms[3][1] = 2; perms[3][2] = 0
    perms[4][0] = 2; perms[4][1] = 0; perms[4][2] = 1
    perms[5][0] = 2; perms[5][1] = 1; perms[5][2] = 0
    cdef Py_ssize_t a, b, c, e
    with nogil:
        for i in range(N):
            for j in range(i, N):
                for k in range(j, N):
                    covered_links = 0
                    covered_dang = 0
                    for w in range(W):
                        u = masks[i, w] | masks[j, w] | masks[k, w]
                        covered_links += __builtin_popcountll(u & link_mask[w])
                    for d in range(D):
                        e = dangling_ids[d]
                        if ((masks[i, e >> 6] | masks[j, e >> 6] | masks[k, e >> 6]) >> (e & 63)) & 1:
                            covered_dang += 1
                    uncovered = 2 * (link_count - covered_links) + (D - covered_dang)
                    t[0] = i
                    t[1] = j
                    t[2] = k
                    for p in range(6):
                        a = t[perms[p][0]]
                        b = t[perms[p][1]]
                        c = t[perms[p][2]]
                        s = 0
                        for d in range(D):
                            e = dangling_ids[d]
                            s |= (<Py_ssize_t>(((masks[a, e >> 6] >> (e & 63)) & 1)
                                  | (((masks[b, e >> 6] >> (e & 63)) & 1) << 1)
                                  | (((masks[c, e >> 6] >> (e & 63)) & 1) << 2))) << (3 * d)
                        if uncovered < weight[s] or (uncovered == weight[s] and lex_less(a, b, c, wit, s)):
                            weight[s] = uncovered
                            wit[s, 0] = <int>a
                            wit[s, 1] = <int>b
                            wit[s, 2] = <int>c
    return weight_arr, wit_arr


cdef bint has_cycle(uint64_t side, const int[:, ::1] nb, int n) nogil:
    cdef int deg[64]
    cdef int stack[130]
    cdef int top = 0, v, t, w
    cdef uint64_t alive = side
    for v in range(n):
        deg[v] = 0
        if (side >> v) & 1:
            for t in range(3):
                w = nb[v, t]
                if w >= 0 and (side >> w) & 1:
                    deg[v] += 1
            if deg[v] <= 1:
                stack[top] = v
                top += 1
    while top > 0:
        top -= 1
        v = stack[top]
        if not (alive >> v) & 1:
            continue
        alive &= ~((<uint64_t>1) << v)
        for t in range(3):
            w = nb[v, t]
            if w >= 0 and w != v and (alive >> w) & 1:
                deg[w] -= 1
                if deg[w] == 1:
                    stack[top] = w
                    top += 1
    return alive != 0


def min_cycle_separating_cut(int n, const int[:, ::1] nb):
    """Gray-code sweep over subsets of vertices 0..n-2.

    ``nb[v]`` lists the up to three link-neighbours of ``v`` (-1 padded, a
    loop contributes ``v`` twice).  Returns (cut, side mask), or (-1, 0) when
    no bipartition has a cycle on both sides.
    """
    cdef uint64_t full = ((<uint64_t>1) << n) - 1
    cdef uint64_t S = 0, best_mask = 0
    cdef int best = INF, degsum = 0, inside = 0, cut, v, t, w, delta, dv
    cdef uint64_t g, steps = (<uint64_t>1) << (n - 1)
    with nogil:
        for g in range(1, steps):
            v = __builtin_ctzll(g)
            delta = 0
            dv = 0
            for t in range(3):
                w = nb[v, t]
                if w < 0:
                    continue
                dv += 1
                if w == v:
                    delta += 1  # each loop is listed twice, so counts 2 halves
                elif (S >> w) & 1:
                    delta += 2
            if (S >> v) & 1:
                S &= ~((<uint64_t>1) << v)
                degsum -= dv
                inside -= delta
            else:
                S |= (<uint64_t>1) << v
                degsum += dv
                inside += delta
            # inside counts edge endpoints inside S, i.e. twice the edge count
            cut = degsum - inside
            if cut > best or (cut == best and S > best_mask):
                continue
            if has_cycle(S, nb, n) and has_cycle(full & ~S, nb, n):
                best = cut
                best_mask = S
    if best == INF:
        return -1, 0
    return best, best_mask
