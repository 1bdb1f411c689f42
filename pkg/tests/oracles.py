"""Slow, independent reference computations used only by the tests.

None of these touch the bitset rows, the CSR arrays or the kernels; they
work from plain Python sets built out of the edge list.
"""
from __future__ import annotations

import itertools
import math
import random

from girthlab.graph import Digraph, from_edge_list


def adjacency(d: Digraph) -> tuple[list[set[int]], list[set[int]]]:
    out = [set() for _ in range(d.n)]
    inn = [set() for _ in range(d.n)]
    for u, v in d.edges():
        out[u].add(v)
        inn[v].add(u)
    return out, inn


def dfs_girth(d: Digraph) -> int | None:
    """Shortest cycle by enumerating every simple cycle (smallest vertex first)."""
    out, _ = adjacency(d)
    best = None

    def walk(start: int, cur: int, depth: int, seen: set[int]) -> None:
        nonlocal best
        for w in out[cur]:
            if w == start:
                if best is None or depth < best:
                    best = depth
            elif w > start and w not in seen:
                seen.add(w)
                walk(start, w, depth + 1, seen)
                seen.discard(w)

    for s in range(d.n):
        walk(s, s, 1, {s})
    return best


def brute_triangles(d: Digraph) -> int:
    """Ordered triples (u, v, w) with edges u->v, u->w, v->w."""
    out, _ = adjacency(d)
    return sum(
        1
        for u, v, w in itertools.permutations(range(d.n), 3)
        if v in out[u] and w in out[u] and w in out[v]
    )


def brute_edge_stats(d: Digraph) -> dict[tuple[int, int], tuple[int, int, int, int]]:
    """``(p, q, t, f)`` per edge from the set definitions."""
    out, inn = adjacency(d)
    res = {}
    for u, v in d.edges():
        common = out[u] & out[v]
        t = len(common)
        p = len(out[v] - out[u])
        q = len(inn[u] - inn[v])
        f = sum(1 for x, y in itertools.combinations(sorted(common), 2) if y not in out[x] and x not in out[y])
        res[(u, v)] = (p, q, t, f)
    return res


def brute_fas(d: Digraph) -> int:
    """Fewest backward edges over all n! vertex orders."""
    edges = list(d.edges())
    best = len(edges)
    for perm in itertools.permutations(range(d.n)):
        pos = {v: i for i, v in enumerate(perm)}
        best = min(best, sum(1 for u, v in edges if pos[u] > pos[v]))
    return best


def is_acyclic(n: int, edges) -> bool:
    """Kahn's algorithm."""
    indeg = [0] * n
    out = [[] for _ in range(n)]
    for u, v in edges:
        out[u].append(v)
        indeg[v] += 1
    stack = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while stack:
        x = stack.pop()
        seen += 1
        for y in out[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                stack.append(y)
    return seen == n


def oriented_graph(n: int, states) -> Digraph:
    """Digraph from one state per unordered pair: 0 absent, 1 forward, 2 backward."""
    edges = []
    for (u, v), s in zip(itertools.combinations(range(n), 2), states):
        if s == 1:
            edges.append((u, v))
        elif s == 2:
            edges.append((v, u))
    return from_edge_list(n, edges)


def all_oriented_graphs(n: int):
    pairs = math.comb(n, 2)
    for states in itertools.product((0, 1, 2), repeat=pairs):
        yield oriented_graph(n, states)


def random_oriented_graph(n: int, seed: int, p: float | None = None) -> Digraph:
    rng = random.Random(seed)
    p = rng.uniform(0.2, 0.9) if p is None else p
    states = [0 if rng.random() > p else rng.choice((1, 2)) for _ in range(math.comb(n, 2))]
    return oriented_graph(n, states)
