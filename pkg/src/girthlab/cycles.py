"""Girth oracle and the constructive short-cycle finder.

The finder turns the induction behind the ``alpha(m)`` outdegree bound into
an algorithm. For each edge ``(u, v)`` of an ``r``-outregular digraph it
grows disjoint vertex layers ``S_1, S_2, ...`` outward from ``N+(v)``:
each layer is the part of a pivot's out-neighbourhood not yet covered,
where the pivot has small outdegree inside the covered region ``G_k``.
Three things can happen:

* a layer touches ``v``, ``N-(v)`` or ``N-(u)``: the parent links give a
  directed cycle of length at most ``m``;
* ``G_k`` has no vertex of outdegree ``<= alpha*|G_k|``: it is a strictly
  smaller instance of the same problem, so we recurse into it;
* the expansion completes for this edge, and we move on to the next.

If every edge completes, counting the disjoint layers over all edges gives
an inequality that is impossible for ``alpha >= alpha(m)``; that branch
raises :class:`InternalContradiction` and indicates a bug.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from . import kernels
from .errors import DenseSubgraph, HypothesisViolated, InternalContradiction
from .graph import Digraph, induced_subgraph, iter_bits, prune_to_outregular

PROVENANCES = ("bfs-oracle", "expansion-disjointness", "dense-subgraph-recursion")
MODES = ("no-base-triangle", "base-triangle", "indegree-lemma")

SMALL_CUTOFF = 8


@dataclass(frozen=True)
class CycleWitness:
    """A directed cycle given by its vertex sequence (last vertex closes to the first)."""

    vertices: tuple[int, ...]
    provenance: str = "bfs-oracle"

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        if len(self.vertices) < 3:
            raise ValueError("a cycle in a digon-free digraph has length >= 3")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError(f"cycle repeats a vertex: {self.vertices}")

    @property
    def length(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def validate(self, d: Digraph) -> None:
        """Raise ``ValueError`` unless every consecutive pair is an edge of ``d``."""
        for u, v in self.edges():
            if not (0 <= u < d.n and 0 <= v < d.n and d.has_edge(u, v)):
                raise ValueError(f"({u},{v}) is not an edge; witness {self.vertices} invalid")

    def relabel(self, labels: Sequence[int], provenance: str | None = None) -> CycleWitness:
        return CycleWitness(tuple(labels[x] for x in self.vertices), provenance or self.provenance)

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices), "length": self.length, "provenance": self.provenance}

    @classmethod
    def from_dict(cls, obj: dict) -> CycleWitness:
        w = cls(tuple(obj["vertices"]), obj["provenance"])
        if obj.get("length", w.length) != w.length:
            raise ValueError("stored length disagrees with the vertex sequence")
        return w


# --------------------------------------------------------------------------
# exact oracles


def _threads(threads: int | None) -> int:
    if threads is None:
        import os

        threads = int(os.environ.get("GIRTHLAB_THREADS", "1") or 1)
    return max(1, threads)


def shortest_cycle(d: Digraph, threads: int | None = None) -> CycleWitness | None:
    """A shortest directed cycle, or ``None`` if ``d`` is acyclic.

    BFS from every source; among cycles of minimum length the one through
    the smallest source is returned, so the result does not depend on
    ``threads``.
    """
    n = d.n
    cap = n + 1
    workers = min(_threads(threads), max(1, n))
    if workers == 1:
        length, path = kernels.shortest_cycle(d, 0, n, cap)
    else:
        step = math.ceil(n / workers)
        chunks = [(lo, min(n, lo + step)) for lo in range(0, n, step)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda c: kernels.shortest_cycle(d, c[0], c[1], cap), chunks))
        found = [(length, path[0], path) for length, path in results if path is not None]
        length, path = (min(found)[0], min(found)[2]) if found else (cap, None)
    if path is None:
        return None
    return CycleWitness(tuple(path), "bfs-oracle")


def girth(d: Digraph, threads: int | None = None) -> int | None:
    """Length of a shortest directed cycle; ``None`` for acyclic digraphs."""
    w = shortest_cycle(d, threads)
    return None if w is None else w.length


def is_m_free(d: Digraph, m: int) -> tuple[bool, CycleWitness | None]:
    """``(True, None)`` iff ``girth(d) > m``; otherwise ``(False, shortest cycle)``."""
    if m < 3:
        raise ValueError(f"m must be >= 3, got {m}")
    w = shortest_cycle(d)
    if w is None or w.length > m:
        return True, None
    return False, w


# --------------------------------------------------------------------------
# set expansion


@dataclass(frozen=True)
class Pivot:
    vertex: int
    subgraph_size: int  # |G_k|; for the base-triangle first step, |N+(u) & N+(v)|
    subgraph_outdeg: int
    outdeg: int


@dataclass
class ExpansionTrace:
    mode: str
    anchor: tuple[int, int] | int
    alpha: float
    m: int
    base_sets: dict[str, frozenset[int]]
    pivots: list[Pivot] = field(default_factory=list)
    layers: list[dict[int, int]] = field(default_factory=list)  # member -> pivot it hangs from
    cumulative_lower_bounds: list[float] = field(default_factory=list)

    @property
    def k(self) -> int:
        return len(self.layers)

    def layer_sets(self) -> list[frozenset[int]]:
        return [frozenset(layer) for layer in self.layers]

    def cumulative_sizes(self) -> list[int]:
        out, acc = [], 0
        for layer in self.layers:
            acc += len(layer)
            out.append(acc)
        return out

    def covered(self) -> int:
        """Total size of the base sets and layers (they are pairwise disjoint)."""
        return sum(len(s) for s in self.base_sets.values()) + sum(len(x) for x in self.layers)

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "anchor": list(self.anchor) if isinstance(self.anchor, tuple) else self.anchor,
            "alpha": self.alpha,
            "m": self.m,
            "base_sets": {k: sorted(v) for k, v in self.base_sets.items()},
            "pivots": [p.__dict__ for p in self.pivots],
            "layers": [{str(x): w for x, w in sorted(layer.items())} for layer in self.layers],
            "cumulative_lower_bounds": self.cumulative_lower_bounds,
        }


def _popcount(x: int) -> int:
    return x.bit_count()


def _min_outdeg_vertex(d: Digraph, region: int) -> tuple[int, int]:
    """Vertex of ``region`` with fewest out-neighbours inside ``region`` (smallest id on ties)."""
    best_v, best_deg = -1, -1
    for x in iter_bits(region):
        deg = _popcount(d.out_rows[x] & region)
        if best_v < 0 or deg < best_deg:
            best_v, best_deg = x, deg
    return best_v, best_deg


def _chain(parents: dict[int, int], x: int, root: int) -> list[int]:
    path = [x]
    while path[-1] != root:
        path.append(parents[path[-1]])
    path.reverse()
    return path


def expand_sets(
    d: Digraph,
    alpha: float,
    m: int,
    anchor: tuple[int, int] | int,
    mode: str,
) -> ExpansionTrace | CycleWitness:
    """Grow the disjoint layers for one anchor.

    ``mode`` selects the construction: ``"no-base-triangle"`` (edge anchor
    with ``t(u,v) = 0``, ``m - 3`` layers), ``"base-triangle"`` (edge
    anchor with ``t(u,v) > 0``, ``m - 2`` layers, the first pivot taken in
    ``N+(u) & N+(v)``) or ``"indegree-lemma"`` (vertex anchor, ``m - 2``
    layers).

    Returns a complete :class:`ExpansionTrace`, or a :class:`CycleWitness`
    of length ``<= m`` as soon as some layer meets a set it must avoid.

    Raises
    ------
    DenseSubgraph
        No admissible pivot exists; ``exc.vertices`` spans the subgraph.
    HypothesisViolated
        The anchor lacks the structure ``mode`` needs.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if m < 3:
        raise ValueError(f"m must be >= 3, got {m}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")

    if mode == "indegree-lemma":
        u, v = None, int(anchor)  # type: ignore[arg-type]
        if not 0 <= v < d.n:
            raise HypothesisViolated(f"vertex {v} not in digraph", v)
    else:
        u, v = anchor  # type: ignore[misc]
        if not (0 <= u < d.n and 0 <= v < d.n and d.has_edge(u, v)):
            raise HypothesisViolated(f"anchor ({u},{v}) is not an edge")

    out_v, in_v = d.out_rows[v], d.in_rows[v]
    if not out_v:
        raise HypothesisViolated(f"N+({v}) is empty; nothing to expand", v)
    if u is None:
        base = {"v": frozenset([v]), "N+(v)": frozenset(iter_bits(out_v)), "N-(v)": frozenset(iter_bits(in_v))}
        forbidden = in_v | (1 << v)
        layers_wanted = m - 2
        t = 0
    else:
        in_u = d.in_rows[u]
        t = _popcount(d.out_rows[u] & out_v)
        if mode == "no-base-triangle":
            if t:
                raise HypothesisViolated(f"t({u},{v}) = {t} > 0; use mode 'base-triangle'")
            layers_wanted = m - 3
        else:
            if not t:
                raise HypothesisViolated(f"t({u},{v}) = 0; base-triangle mode needs t > 0")
            layers_wanted = m - 2
        # y in N+(v) & N-(u) closes u -> v -> y -> u
        hit = out_v & in_u
        if hit:
            y = next(iter_bits(hit))
            return CycleWitness((u, v, y), "expansion-disjointness")
        base = {
            "N+(v)": frozenset(iter_bits(out_v)),
            "N-(v)": frozenset(iter_bits(in_v)),
            "N-(u)\\N-(v)": frozenset(iter_bits(in_u & ~in_v)),
        }
        forbidden = in_v | in_u | (1 << v)

    trace = ExpansionTrace(mode, anchor, alpha, m, base)
    parents: dict[int, int] = {x: v for x in iter_bits(out_v)}
    region = out_v
    size_out_v = _popcount(out_v)
    bound = 0.0
    first_pivot = None

    for k in range(1, layers_wanted + 1):
        if k == 1 and mode == "base-triangle":
            common = d.out_rows[u] & out_v
            w, deg = _min_outdeg_vertex(d, common)
            cap = alpha * t
            if deg > cap:
                raise DenseSubgraph(frozenset(iter_bits(common)), cap)
            p = size_out_v - t
            trace.pivots.append(Pivot(w, t, deg, d.outdeg(w)))
            bound = d.outdeg(w) - alpha * t - p
            first_pivot = w
        else:
            size = _popcount(region)
            w, deg = _min_outdeg_vertex(d, region)
            cap = alpha * size
            if deg > cap:
                raise DenseSubgraph(frozenset(iter_bits(region)), cap)
            trace.pivots.append(Pivot(w, size, deg, d.outdeg(w)))
            bound = d.outdeg(w) - alpha * size_out_v + (1 - alpha) * bound

        layer_mask = d.out_rows[w] & ~region
        for x in iter_bits(layer_mask):
            if forbidden >> x & 1:
                return _close(parents, w, x, u, v, d, m, first_pivot)
        trace.layers.append({x: w for x in iter_bits(layer_mask)})
        for x in iter_bits(layer_mask):
            parents[x] = w
        region |= layer_mask
        trace.cumulative_lower_bounds.append(bound)
    return trace


def _close(parents, w, x, u, v, d, m, first_pivot) -> CycleWitness:
    """Cycle through the layer vertex ``x`` (child of pivot ``w``) that hit a forbidden set."""
    if x == v:
        cycle = _chain(parents, w, v)
    elif d.in_rows[v] >> x & 1:
        cycle = _chain(parents, w, v) + [x]
    else:
        # x -> u, and u -> v (always) or u -> first_pivot (base-triangle mode)
        via_v = [u] + _chain(parents, w, v) + [x]
        cycle = via_v
        if first_pivot is not None:
            chain = via_v[1:]
            if first_pivot in chain:
                via_w1 = [u] + chain[chain.index(first_pivot):]
                if len(via_w1) < len(cycle):
                    cycle = via_w1
    witness = CycleWitness(tuple(cycle), "expansion-disjointness")
    if witness.length > m:
        raise InternalContradiction(f"reconstructed cycle of length {witness.length} exceeds m={m}")
    return witness


# --------------------------------------------------------------------------
# constructive finder


def required_outdegree(alpha: float, n: int) -> int:
    """``ceil(alpha*n)``, robust to float noise when ``alpha*n`` is integral."""
    return max(0, math.ceil(alpha * n - 1e-9))


@dataclass
class FinderResult:
    witness: CycleWitness
    depth: int
    edges_expanded: int


def find_short_cycle_constructive(
    d: Digraph, m: int, alpha: float, *, cutoff: int = SMALL_CUTOFF
) -> tuple[CycleWitness, int]:
    """Return a directed cycle of length ``<= m`` and the recursion depth used.

    Every vertex must have outdegree ``>= ceil(alpha*n)``. The guarantee
    holds for ``alpha >= alpha(m)``; below that the search is best effort and
    may end in :class:`InternalContradiction`.
    """
    res = find_short_cycle_detailed(d, m, alpha, cutoff=cutoff)
    return res.witness, res.depth


def find_short_cycle_detailed(d: Digraph, m: int, alpha: float, *, cutoff: int = SMALL_CUTOFF) -> FinderResult:
    if m < 3:
        raise ValueError(f"m must be >= 3, got {m}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    r = required_outdegree(alpha, d.n)
    for v in range(d.n):
        if d.outdeg(v) < r:
            raise HypothesisViolated(f"vertex {v} has outdegree {d.outdeg(v)} < ceil(alpha*n) = {r}", v)
    if d.n == 0:
        raise HypothesisViolated("empty digraph")

    current, labels, depth, expanded = d, list(range(d.n)), 0, 0
    while True:
        provenance = "dense-subgraph-recursion" if depth else None
        if current.n <= cutoff:
            w = shortest_cycle(current)
            if w is None or w.length > m:
                raise InternalContradiction(
                    f"no cycle of length <= {m} in a {current.n}-vertex instance meeting the outdegree bound"
                )
            result = w.relabel(labels, provenance)
            break
        pruned = prune_to_outregular(current, required_outdegree(alpha, current.n))
        try:
            found = None
            for u, v in pruned.edges():
                t = _popcount(pruned.out_rows[u] & pruned.out_rows[v])
                mode = "base-triangle" if t else "no-base-triangle"
                expanded += 1
                out = expand_sets(pruned, alpha, m, (u, v), mode)
                if isinstance(out, CycleWitness):
                    found = out
                    break
            if found is None:
                raise InternalContradiction(
                    f"every edge expansion completed on {current.n} vertices (alpha={alpha}, m={m})"
                )
            result = found.relabel(labels, provenance)
            break
        except DenseSubgraph as dense:
            sub, keep = induced_subgraph(pruned, dense.vertices)
            labels = [labels[i] for i in keep]
            current = sub
            depth += 1
    result.validate(d)
    return FinderResult(result, depth, expanded)
