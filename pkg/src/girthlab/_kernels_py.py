"""Reference (interpreted) kernels.

These define the exact results, witnesses included, that the compiled
kernels in ``_kernels.pyx`` must reproduce. Tie-breaking rules:

* shortest cycle: smallest length, then smallest source; inside one BFS the
  closing vertex and every predecessor is the smallest-id candidate in the
  previous BFS layer.
* FAS DP: the vertex placed last in a subset is the smallest id among the
  minimisers.
"""
from __future__ import annotations

import numpy as np

BACKEND = "python"


def _low(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def shortest_cycle(d, start: int, stop: int, cap: int) -> tuple[int, list[int] | None]:
    """Shortest cycle (length < ``cap``) through some source in ``[start, stop)``.

    Returns ``(length, vertices)`` with ``vertices[0]`` the source, or
    ``(cap, None)`` when nothing shorter than ``cap`` exists.
    """
    out_rows, in_rows = d.out_rows, d.in_rows
    best_len, best = cap, None
    for s in range(start, stop):
        if best_len <= 3:
            break
        closing = in_rows[s]
        if not closing or not out_rows[s]:
            continue
        layers = [1 << s]
        seen = frontier = 1 << s
        dist = 0
        while True:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= out_rows[low.bit_length() - 1]
                f ^= low
            nxt &= ~seen
            dist += 1
            if not nxt or dist + 1 >= best_len:
                break
            hit = nxt & closing
            if hit:
                cur = _low(hit)
                path = [cur]
                for i in range(dist - 1, 0, -1):
                    cur = _low(in_rows[cur] & layers[i])
                    path.append(cur)
                path.append(s)
                path.reverse()
                best_len, best = dist + 1, path
                break
            layers.append(nxt)
            seen |= nxt
            frontier = nxt
    return best_len, best


def _popcounts(n: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    pc = np.zeros(1 << n, dtype=np.int32)
    for bit in range(n):
        pc += ((idx >> bit) & 1).astype(np.int32)
    return pc


def fas_dp(n: int, out_masks: list[int]) -> tuple[int, list[int]]:
    """Minimum number of backward edges over all vertex orders, and one optimal order.

    ``dp[T]`` is the best cost of laying out subset ``T`` first; appending
    ``v`` after ``T`` pays ``|N+(v) & T|`` backward edges. Vectorised over
    each popcount layer of subsets.
    """
    if n == 0:
        return 0, []
    size = 1 << n
    pc = _popcounts(n)
    by_layer = np.argsort(pc, kind="stable")
    bounds = np.searchsorted(pc[by_layer], np.arange(n + 2))
    dp = np.zeros(size, dtype=np.int32)
    choice = np.zeros(size, dtype=np.int8)
    outs = np.asarray(out_masks, dtype=np.int64)
    for k in range(1, n + 1):
        layer = by_layer[bounds[k]:bounds[k + 1]]
        best = np.full(layer.shape, np.iinfo(np.int32).max, dtype=np.int32)
        pick = np.zeros(layer.shape, dtype=np.int8)
        for v in range(n):
            has_v = (layer >> v) & 1 == 1
            prev = layer ^ (1 << v)
            cand = dp[prev] + pc[prev & outs[v]]
            better = has_v & (cand < best)
            best = np.where(better, cand, best)
            pick = np.where(better, np.int8(v), pick)
        dp[layer] = best
        choice[layer] = pick
    order = []
    t = size - 1
    while t:
        v = int(choice[t])
        order.append(v)
        t ^= 1 << v
    order.reverse()
    return int(dp[size - 1]), order


def edge_counts(d) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per edge, in lexicographic order: ``t``, ``f`` and ``|N-(u) & N-(v)|``."""
    out_rows, in_rows = d.out_rows, d.in_rows
    m = d.edge_count
    t = np.zeros(m, dtype=np.int64)
    f = np.zeros(m, dtype=np.int64)
    common_in = np.zeros(m, dtype=np.int64)
    e = 0
    for u, row in enumerate(d.out_adj):
        ru, iu = out_rows[u], in_rows[u]
        for v in row:
            inter = ru & out_rows[v]
            k = inter.bit_count()
            inside = 0
            x = inter
            while x:
                low = x & -x
                inside += (out_rows[low.bit_length() - 1] & inter).bit_count()
                x ^= low
            t[e] = k
            f[e] = k * (k - 1) // 2 - inside
            common_in[e] = (iu & in_rows[v]).bit_count()
            e += 1
    return t, f, common_in


def vertex_triangles(d) -> np.ndarray:
    """``t(v)`` = edges inside ``N+(v)``, counted through in-rows."""
    out_rows, in_rows = d.out_rows, d.in_rows
    tv = np.zeros(d.n, dtype=np.int64)
    for v, row in enumerate(d.out_adj):
        rv = out_rows[v]
        tv[v] = sum((in_rows[x] & rv).bit_count() for x in row)
    return tv
