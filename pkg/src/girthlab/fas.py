"""Minimum feedback arc sets and the missing-edge bounds for m-free digraphs.

``beta(G)`` is the fewest edges whose removal leaves ``G`` acyclic,
``gamma(G)`` the number of non-adjacent vertex pairs. For m-free ``G``
the constant ``c_m`` from :mod:`girthlab.constants` bounds
``beta <= c_m * gamma``, and some vertex has outdegree at most
``sqrt(2 c_m gamma)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from . import constants, kernels
from .cycles import is_m_free
from .errors import GammaZero, NotMFree, TooLarge
from .graph import Digraph, gamma

EXACT_LIMIT = 20
UNVERIFIED = "unverified (heuristic beta)"


@dataclass(frozen=True)
class FasResult:
    beta: int
    removed: tuple[tuple[int, int], ...]
    order: tuple[int, ...]
    exact: bool

    def check(self, d: Digraph) -> None:
        """Raise unless ``removed`` is exactly the set of backward edges of ``order``."""
        if sorted(self.order) != list(range(d.n)):
            raise ValueError("order is not a permutation of the vertices")
        if backward_edges(d, self.order) != self.removed or self.beta != len(self.removed):
            raise ValueError("removed edges are not the backward edges of order")

    def to_dict(self) -> dict:
        return {
            "beta": self.beta,
            "removed": [list(e) for e in self.removed],
            "order": list(self.order),
            "exact": self.exact,
        }


def backward_edges(d: Digraph, order) -> tuple[tuple[int, int], ...]:
    pos = [0] * d.n
    for i, v in enumerate(order):
        pos[v] = i
    return tuple((u, v) for u, v in d.edges() if pos[u] > pos[v])


def _result(d: Digraph, order, exact: bool) -> FasResult:
    removed = backward_edges(d, order)
    return FasResult(len(removed), removed, tuple(order), exact)


def beta_exact(d: Digraph) -> FasResult:
    """Exact ``beta`` by dynamic programming over vertex subsets (``n <= 20``)."""
    if d.n > EXACT_LIMIT:
        raise TooLarge(d.n, EXACT_LIMIT)
    best, order = kernels.fas_dp(d.n, list(d.out_rows))
    res = _result(d, order, True)
    if res.beta != best:
        raise ArithmeticError(f"DP cost {best} disagrees with recovered order cost {res.beta}")
    return res


def beta_heuristic(d: Digraph) -> FasResult:
    """Greedy upper bound: strip sinks and sources, else take max ``outdeg - indeg``.

    Ties go to the smallest vertex id. Sinks are laid out from the back,
    sources from the front.
    """
    alive = set(range(d.n))
    outd = list(d.outdegrees())
    ind = list(d.indegrees())
    front: list[int] = []
    back: list[int] = []

    def drop(v: int) -> None:
        alive.discard(v)
        for w in d.out_adj[v]:
            if w in alive:
                ind[w] -= 1
        for w in d.in_adj[v]:
            if w in alive:
                outd[w] -= 1

    while alive:
        progress = True
        while progress:
            progress = False
            for v in sorted(alive):
                if v in alive and outd[v] == 0:
                    back.append(v)
                    drop(v)
                    progress = True
            for v in sorted(alive):
                if v in alive and ind[v] == 0:
                    front.append(v)
                    drop(v)
                    progress = True
        if alive:
            v = min(alive, key=lambda x: (ind[x] - outd[x], x))
            front.append(v)
            drop(v)
    return _result(d, front + back[::-1], False)


def beta(d: Digraph) -> FasResult:
    return beta_exact(d) if d.n <= EXACT_LIMIT else beta_heuristic(d)


def _require_m_free(d: Digraph, m: int) -> None:
    ok, witness = is_m_free(d, m)
    if not ok:
        raise NotMFree(m, witness)


def check_fact1(d: Digraph, m: int) -> dict:
    """Evaluate ``beta <= c_m * gamma`` on an m-free digraph."""
    _require_m_free(d, m)
    res = beta(d)
    cm = constants.c(m)
    g = gamma(d)
    threshold = cm * g
    within = res.beta <= threshold + 1e-12
    report = {
        "beta": res.beta,
        "gamma": g,
        "c_m": cm,
        "threshold": threshold,
        "exact": res.exact,
        "holds": within if res.exact else UNVERIFIED,
    }
    if not res.exact:
        report["heuristic_within_bound"] = within
    return report


def check_lemma2(d: Digraph, m: int) -> dict:
    """Evaluate ``min_v d+(v) <= sqrt(2 c_m gamma)`` on an m-free digraph."""
    _require_m_free(d, m)
    if d.n == 0:
        return {"min_outdeg": None, "bound": 0.0, "holds": True, "witness_vertex": None}
    degs = d.outdegrees()
    low = min(degs)
    bound = math.sqrt(2.0 * constants.c(m) * gamma(d))
    return {
        "min_outdeg": low,
        "bound": bound,
        "holds": low <= bound + 1e-12,
        "witness_vertex": degs.index(low),
    }


def sullivan_ratio(d: Digraph, m: int) -> dict:
    """``beta / gamma`` next to the conjectured extreme ``2 / ((m+1)(m-2))``; diagnostic only."""
    _require_m_free(d, m)
    g = gamma(d)
    if g == 0:
        raise GammaZero("gamma is zero; the ratio is undefined")
    res = beta_exact(d)
    return {
        "beta": res.beta,
        "gamma": g,
        "ratio": res.beta / g,
        "conjectured": 2.0 / ((m + 1) * (m - 2)),
    }
