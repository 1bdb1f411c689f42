"""Simple digon-free digraphs on dense integer vertices, plus generators.

A :class:`Digraph` stores sorted out- and in-neighbour tuples (canonical)
and the same adjacency as integer bit rows (``out_rows[v]`` has bit ``w``
set iff ``v -> w``). Instances are immutable after construction.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    Digon,
    DigonOffsetPair,
    DuplicateEdge,
    GraphError,
    InfeasibleDegree,
    SelfLoop,
    VertexOutOfRange,
)

Edge = tuple[int, int]


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Digraph:
    """Loopless, digon-free directed graph without multi-edges.

    Use :func:`from_edge_list` (validating) rather than the constructor.
    """

    def __init__(self, n: int, out_adj: Sequence[Sequence[int]]):
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        if len(out_adj) != n:
            raise GraphError(f"expected {n} adjacency rows, got {len(out_adj)}")
        self.n = n
        self.out_adj: tuple[tuple[int, ...], ...] = tuple(tuple(row) for row in out_adj)
        ins: list[list[int]] = [[] for _ in range(n)]
        for u, row in enumerate(self.out_adj):
            for v in row:
                ins[v].append(u)
        self.in_adj: tuple[tuple[int, ...], ...] = tuple(tuple(row) for row in ins)
        self.edge_count = sum(len(row) for row in self.out_adj)
        self.out_rows: tuple[int, ...] = tuple(mask_of(row) for row in self.out_adj)
        self.in_rows: tuple[int, ...] = tuple(mask_of(row) for row in self.in_adj)

    # -- basic queries ----------------------------------------------------

    def outdeg(self, v: int) -> int:
        return len(self.out_adj[v])

    def indeg(self, v: int) -> int:
        return len(self.in_adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.out_rows[u] >> v & 1)

    def edges(self) -> Iterator[Edge]:
        """Edges in lexicographic ``(u, v)`` order."""
        for u, row in enumerate(self.out_adj):
            for v in row:
                yield (u, v)

    def outdegrees(self) -> list[int]:
        return [len(row) for row in self.out_adj]

    def indegrees(self) -> list[int]:
        return [len(row) for row in self.in_adj]

    def min_outdegree(self) -> int:
        return min(self.outdegrees(), default=0)

    def outregular_degree(self) -> int | None:
        """Common outdegree ``r`` if every vertex has it, else ``None``."""
        degs = set(self.outdegrees())
        if len(degs) == 1:
            return degs.pop()
        if not degs:
            return 0
        return None

    # -- arrays for the compiled kernels -----------------------------------

    @cached_property
    def csr_out(self) -> tuple[np.ndarray, np.ndarray]:
        return _csr(self.out_adj)

    @cached_property
    def csr_in(self) -> tuple[np.ndarray, np.ndarray]:
        return _csr(self.in_adj)

    @cached_property
    def word_rows(self) -> tuple[np.ndarray, np.ndarray]:
        """(out, in) bit rows packed into ``uint64`` words, shape ``(n, ceil(n/64))``."""
        return _pack_rows(self.out_adj, self.n), _pack_rows(self.in_adj, self.n)

    # -- dunder -------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self.out_adj == other.out_adj

    def __hash__(self) -> int:
        return hash((self.n, self.out_adj))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, edges={self.edge_count})"


def _csr(rows: Sequence[Sequence[int]]) -> tuple[np.ndarray, np.ndarray]:
    indptr = np.zeros(len(rows) + 1, dtype=np.int64)
    for i, row in enumerate(rows):
        indptr[i + 1] = indptr[i] + len(row)
    indices = np.fromiter((v for row in rows for v in row), dtype=np.int64, count=int(indptr[-1]))
    return indptr, indices


def _pack_rows(rows: Sequence[Sequence[int]], n: int) -> np.ndarray:
    words = max(1, (n + 63) // 64)
    out = np.zeros((n, words), dtype=np.uint64)
    for i, row in enumerate(rows):
        for v in row:
            out[i, v >> 6] |= np.uint64(1) << np.uint64(v & 63)
    return out


# --------------------------------------------------------------------------
# construction


def from_edge_list(n: int, edges: Iterable[Edge]) -> Digraph:
    """Build and validate a digraph.

    Raises
    ------
    VertexOutOfRange, SelfLoop, DuplicateEdge, Digon
    """
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    rows: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        for x in (u, v):
            if not 0 <= x < n:
                raise VertexOutOfRange(x, n)
        if u == v:
            raise SelfLoop(u)
        if v in rows[u]:
            raise DuplicateEdge(u, v)
        if u in rows[v]:
            raise Digon(min(u, v), max(u, v))
        rows[u].add(v)
    return Digraph(n, [sorted(r) for r in rows])


def empty(n: int) -> Digraph:
    return Digraph(n, [()] * n)


def directed_cycle(n: int) -> Digraph:
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def transitive_tournament(n: int) -> Digraph:
    return Digraph(n, [range(i + 1, n) for i in range(n)])


def circulant(n: int, offsets: Iterable[int]) -> Digraph:
    """Circulant digraph with edges ``i -> i + s (mod n)`` for ``s`` in ``offsets``.

    With ``offsets = {1..k}`` this is the classical extremal family whose
    girth is ``ceil(n / k)``.
    """
    offs = sorted(set(offsets))
    for s in offs:
        if not 1 <= s <= n - 1:
            raise GraphError(f"offset {s} outside [1, {n - 1}]")
        if n - s in offs:
            raise DigonOffsetPair(min(s, n - s), n)
    return Digraph(n, [sorted((i + s) % n for s in offs) for i in range(n)])


def random_outregular(n: int, r: int, seed: int | None = None) -> Digraph:
    """Random digraph with every outdegree equal to ``r``.

    Out-neighbours are drawn per vertex with rejection of loops, duplicates
    and digons; after ``100*n*r`` rejections the attempt restarts. Greedy
    drawing rarely succeeds near ``r = (n-1)/2``, so after
    ``GREEDY_ATTEMPTS`` restarts the sampler switches to
    :func:`_rewired_outregular`. Deterministic for a fixed seed.
    """
    if r < 0 or (r > 0 and 2 * r >= n):
        raise InfeasibleDegree(f"need 0 <= r < n/2, got r={r}, n={n}")
    rng = random.Random(seed)
    budget = 100 * n * max(r, 1)
    for _ in range(GREEDY_ATTEMPTS):
        rows: list[set[int]] = [set() for _ in range(n)]
        failures = 0
        for v in range(n):
            while len(rows[v]) < r and failures <= budget:
                w = rng.randrange(n)
                if w == v or w in rows[v] or v in rows[w]:
                    failures += 1
                    continue
                rows[v].add(w)
            if failures > budget:
                break
        else:
            return Digraph(n, [sorted(row) for row in rows])
    return _rewired_outregular(n, r, rng)


GREEDY_ATTEMPTS = 8


def _rewired_outregular(n: int, r: int, rng: random.Random) -> Digraph:
    """Relabelled circulant ``{1..r}`` mixed by outdegree-preserving moves.

    Moves: redirect ``a->b`` to ``a->w`` for a non-neighbour ``w`` of ``a``,
    or reverse a directed triangle. Both keep every outdegree and never
    create digons.
    """
    perm = list(range(n))
    rng.shuffle(perm)
    rows = [set() for _ in range(n)]
    for i in range(n):
        for s in range(1, r + 1):
            rows[perm[i]].add(perm[(i + s) % n])
    for _ in range(20 * n * max(r, 1)):
        a = rng.randrange(n)
        b = rng.choice(sorted(rows[a]))
        if rng.random() < 0.5:
            w = rng.randrange(n)
            if w != a and w not in rows[a] and a not in rows[w]:
                rows[a].discard(b)
                rows[a].add(w)
        else:
            closing = [c for c in sorted(rows[b]) if a in rows[c]]
            if closing:
                c = rng.choice(closing)
                rows[a].discard(b), rows[b].discard(c), rows[c].discard(a)
                rows[a].add(c), rows[c].add(b), rows[b].add(a)
    return Digraph(n, [sorted(row) for row in rows])


def random_mfree(n: int, m: int, density: float, seed: int | None = None) -> Digraph:
    """Random digraph with girth greater than ``m``.

    Candidate ordered pairs are tried in a seeded random order; a pair
    ``(u, v)`` is accepted iff no path of length ``<= m - 1`` leads from
    ``v`` back to ``u``. Insertion stops once ``density * C(n, 2)`` edges
    are present or the candidates run out.
    """
    if m < 3:
        raise GraphError(f"m must be >= 3, got {m}")
    if not 0.0 <= density <= 1.0:
        raise GraphError(f"density must lie in [0, 1], got {density}")
    rng = random.Random(seed)
    target = math.floor(density * n * (n - 1) / 2 + 1e-9)
    candidates = [(u, v) for u in range(n) for v in range(n) if u != v]
    rng.shuffle(candidates)
    out_rows = [0] * n
    count = 0
    for u, v in candidates:
        if count >= target:
            break
        if out_rows[u] >> v & 1:
            continue
        if _reaches_within(out_rows, v, u, m - 1):
            continue
        out_rows[u] |= 1 << v
        count += 1
    return Digraph(n, [list(iter_bits(row)) for row in out_rows])


def _reaches_within(out_rows: Sequence[int], src: int, dst: int, steps: int) -> bool:
    target = 1 << dst
    seen = frontier = 1 << src
    for _ in range(steps):
        nxt = 0
        for x in iter_bits(frontier):
            nxt |= out_rows[x]
        if nxt & target:
            return True
        frontier = nxt & ~seen
        if not frontier:
            return False
        seen |= frontier
    return False


@dataclass(frozen=True)
class GenSpec:
    """Declarative generator request (used by the CLI ``gen`` verb)."""

    kind: str
    n: int
    params: dict = field(default_factory=dict)

    KINDS = ("circulant", "outregular-random", "mfree-random", "transitive-tournament")

    def build(self) -> Digraph:
        p = self.params
        if self.kind == "circulant":
            return circulant(self.n, p["offsets"])
        if self.kind == "outregular-random":
            return random_outregular(self.n, p["r"], p.get("seed"))
        if self.kind == "mfree-random":
            return random_mfree(self.n, p["m"], p.get("density", 1.0), p.get("seed"))
        if self.kind == "transitive-tournament":
            return transitive_tournament(self.n)
        raise GraphError(f"unknown generator kind {self.kind!r}; expected one of {self.KINDS}")


# --------------------------------------------------------------------------
# derived graphs and counts


def gamma(d: Digraph) -> int:
    """Number of unordered non-adjacent vertex pairs (missing edges)."""
    return d.n * (d.n - 1) // 2 - d.edge_count


def induced_subgraph(d: Digraph, vertices: Iterable[int]) -> tuple[Digraph, list[int]]:
    """Subgraph induced on ``vertices``.

    Returns the subgraph (relabelled ``0..k-1`` in increasing original id)
    and the list mapping new ids back to original ids.
    """
    keep = sorted(set(vertices))
    for v in keep:
        if not 0 <= v < d.n:
            raise VertexOutOfRange(v, d.n)
    index = {v: i for i, v in enumerate(keep)}
    sel = mask_of(keep)
    rows = [[index[w] for w in iter_bits(d.out_rows[v] & sel)] for v in keep]
    return Digraph(len(keep), rows), keep


def prune_to_outregular(d: Digraph, r: int) -> Digraph:
    """Keep the first ``r`` out-neighbours of every vertex (all must have ``>= r``)."""
    return Digraph(d.n, [row[:r] for row in d.out_adj])


def relabel(d: Digraph, perm: Sequence[int]) -> Digraph:
    """Image of ``d`` under the vertex map ``v -> perm[v]``."""
    return from_edge_list(d.n, [(perm[u], perm[v]) for u, v in d.edges()])
