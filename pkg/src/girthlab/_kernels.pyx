# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same signatures and results as ``_kernels_py``."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, int32_t, uint64_t, int8_t
from libc.stdlib cimport malloc, free

cnp.import_array()

BACKEND = "cython"


cdef extern from *:
    int popcount64 "__builtin_popcountll"(unsigned long long) nogil
    int ctz64 "__builtin_ctzll"(unsigned long long) nogil


cdef int64_t _bfs_cycle(const int64_t[::1] optr, const int64_t[::1] oidx,
                        const int64_t[::1] iptr, const int64_t[::1] iidx,
                        int64_t n, int64_t s, int64_t cap,
                        int64_t* dist, int64_t* queue, int64_t* closer) noexcept nogil:
    """Length of the shortest cycle through ``s`` if below ``cap``, else ``cap``.

    On success ``closer[0]`` is the smallest-id in-neighbour of ``s`` at the
    minimal BFS depth; ``dist`` keeps depths for path recovery.
    """
    cdef int64_t i, j, x, y, head = 0, tail = 0, level_end, depth = 0, best = -1
    for i in range(n):
        dist[i] = -1
    dist[s] = 0
    queue[tail] = s
    tail += 1
    while head < tail:
        level_end = tail
        depth += 1
        if depth + 1 >= cap:
            break
        # expand one full layer
        while head < level_end:
            x = queue[head]
            head += 1
            for j in range(optr[x], optr[x + 1]):
                y = oidx[j]
                if dist[y] < 0:
                    dist[y] = depth
                    queue[tail] = y
                    tail += 1
        # smallest in-neighbour of s on the new layer closes the cycle
        for j in range(iptr[s], iptr[s + 1]):
            y = iidx[j]
            if dist[y] == depth:
                best = y
                break
        if best >= 0:
            closer[0] = best
            return depth + 1
    return cap


def shortest_cycle(d, int64_t start, int64_t stop, int64_t cap):
    cdef int64_t n = d.n
    optr_a, oidx_a = d.csr_out
    iptr_a, iidx_a = d.csr_in
    cdef const int64_t[::1] optr = optr_a
    cdef const int64_t[::1] oidx = oidx_a
    cdef const int64_t[::1] iptr = iptr_a
    cdef const int64_t[::1] iidx = iidx_a
    cdef int64_t best_len = cap, best_src = -1, best_close = -1, length, closer = -1, s, j
    cdef int64_t* dist
    cdef int64_t* queue
    cdef int64_t* keep
    if n == 0:
        return cap, None
    dist = <int64_t*> malloc(n * sizeof(int64_t))
    queue = <int64_t*> malloc(n * sizeof(int64_t))
    keep = <int64_t*> malloc(n * sizeof(int64_t))
    if dist == NULL or queue == NULL or keep == NULL:
        free(dist); free(queue); free(keep)
        raise MemoryError()
    try:
        with nogil:
            for s in range(start, stop):
                if best_len <= 3:
                    break
                if iptr[s] == iptr[s + 1] or optr[s] == optr[s + 1]:
                    continue
                length = _bfs_cycle(optr, oidx, iptr, iidx, n, s, best_len, dist, queue, &closer)
                if length < best_len:
                    best_len = length
                    best_src = s
                    best_close = closer
                    for j in range(n):
                        keep[j] = dist[j]
        if best_src < 0:
            return cap, None
        # walk back through layers choosing the smallest-id predecessor
        path = [best_close]
        cur = best_close
        for level in range(keep[best_close] - 1, 0, -1):
            for j in range(iptr[cur], iptr[cur + 1]):
                if keep[iidx[j]] == level:
                    cur = iidx[j]
                    break
            path.append(cur)
        path.append(best_src)
        path.reverse()
        return best_len, path
    finally:
        free(dist)
        free(queue)
        free(keep)


def fas_dp(int n, out_masks):
    if n == 0:
        return 0, []
    cdef int64_t size = (<int64_t> 1) << n
    cdef cnp.ndarray[int32_t, ndim=1] dp_a = np.zeros(size, dtype=np.int32)
    cdef cnp.ndarray[int8_t, ndim=1] ch_a = np.zeros(size, dtype=np.int8)
    cdef int32_t[::1] dp = dp_a
    cdef int8_t[::1] choice = ch_a
    cdef uint64_t outs[64]
    cdef int64_t t, prev, rest
    cdef int32_t best, cand
    cdef int v, pick
    for v in range(n):
        outs[v] = <uint64_t> out_masks[v]
    with nogil:
        for t in range(1, size):
            best = 2147483647
            pick = 0
            rest = t
            while rest:
                v = ctz64(<unsigned long long> rest)
                rest &= rest - 1
                prev = t ^ ((<int64_t> 1) << v)
                cand = dp[prev] + popcount64(<unsigned long long> (outs[v] & <uint64_t> prev))
                if cand < best:
                    best = cand
                    pick = v
            dp[t] = best
            choice[t] = <int8_t> pick
    order = []
    t = size - 1
    while t:
        v = choice[t]
        order.append(v)
        t ^= (<int64_t> 1) << v
    order.reverse()
    return int(dp[size - 1]), order


def edge_counts(d):
    cdef int64_t n = d.n
    optr_a, oidx_a = d.csr_out
    out_w_a, in_w_a = d.word_rows
    cdef const int64_t[::1] optr = optr_a
    cdef const int64_t[::1] oidx = oidx_a
    cdef const uint64_t[:, ::1] ow = out_w_a
    cdef const uint64_t[:, ::1] iw = in_w_a
    cdef int64_t words = ow.shape[1] if n > 0 else 1
    cdef int64_t m = d.edge_count
    t_a = np.zeros(m, dtype=np.int64)
    f_a = np.zeros(m, dtype=np.int64)
    c_a = np.zeros(m, dtype=np.int64)
    cdef int64_t[::1] t = t_a
    cdef int64_t[::1] f = f_a
    cdef int64_t[::1] ci = c_a
    cdef uint64_t* inter = <uint64_t*> malloc(words * sizeof(uint64_t))
    cdef int64_t u, v, e = 0, j, w, k, inside, cin, x, ww
    cdef uint64_t bits
    if inter == NULL:
        raise MemoryError()
    try:
        with nogil:
            for u in range(n):
                for j in range(optr[u], optr[u + 1]):
                    v = oidx[j]
                    k = 0
                    cin = 0
                    for w in range(words):
                        inter[w] = ow[u, w] & ow[v, w]
                        k += popcount64(inter[w])
                        cin += popcount64(iw[u, w] & iw[v, w])
                    inside = 0
                    for w in range(words):
                        bits = inter[w]
                        while bits:
                            x = (w << 6) + ctz64(bits)
                            bits &= bits - 1
                            for ww in range(words):
                                inside += popcount64(ow[x, ww] & inter[ww])
                    t[e] = k
                    f[e] = k * (k - 1) // 2 - inside
                    ci[e] = cin
                    e += 1
    finally:
        free(inter)
    return t_a, f_a, c_a


def vertex_triangles(d):
    cdef int64_t n = d.n
    optr_a, oidx_a = d.csr_out
    out_w_a, in_w_a = d.word_rows
    cdef const int64_t[::1] optr = optr_a
    cdef const int64_t[::1] oidx = oidx_a
    cdef const uint64_t[:, ::1] ow = out_w_a
    cdef const uint64_t[:, ::1] iw = in_w_a
    cdef int64_t words = ow.shape[1] if n > 0 else 1
    tv_a = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] tv = tv_a
    cdef int64_t v, j, x, w, acc
    with nogil:
        for v in range(n):
            acc = 0
            for j in range(optr[v], optr[v + 1]):
                x = oidx[j]
                for w in range(words):
                    acc += popcount64(iw[x, w] & ow[v, w])
            tv[v] = acc
    return tv_a
