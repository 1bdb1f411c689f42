"""Counting statistics per edge and per vertex, and inequality audits.

Per edge ``(u, v)``:

* ``t`` -- common out-neighbours ``|N+(u) & N+(v)|`` (transitive triangles based at the edge)
* ``p`` -- ``d+(v) - t``, induced 2-paths starting with the edge
* ``q`` -- ``d-(u) - |N-(u) & N-(v)|``, induced 2-paths ending with the edge
* ``f`` -- unordered non-adjacent pairs inside ``N+(u) & N+(v)``

Audits evaluate per-item inequalities and report the slack
``bound - value`` (non-negative means the inequality holds). The
inequalities are only guaranteed for minimal counterexamples, so a
violation on a concrete digraph is data rather than a bug.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import constants, kernels
from .cycles import is_m_free
from .errors import NotMFree, NotOutregular, TauOverHalf
from .graph import Digraph

INEQUALITIES = ("lemma1", "lemma3", "lemma4", "lemma5", "lemma6", "tauineq1", "tauineq2")
SLACK_TOL = 1e-9


@dataclass(frozen=True)
class EdgeStats:
    edges: tuple[tuple[int, int], ...]
    p: np.ndarray
    q: np.ndarray
    t: np.ndarray
    f: np.ndarray

    def index(self, u: int, v: int) -> int:
        return self._pos[(u, v)]

    @property
    def _pos(self) -> dict:
        cache = self.__dict__.get("_pos_cache")
        if cache is None:
            cache = {e: i for i, e in enumerate(self.edges)}
            object.__setattr__(self, "_pos_cache", cache)
        return cache

    def of(self, u: int, v: int) -> dict[str, int]:
        i = self.index(u, v)
        return {"p": int(self.p[i]), "q": int(self.q[i]), "t": int(self.t[i]), "f": int(self.f[i])}

    def rows(self):
        for i, (u, v) in enumerate(self.edges):
            yield u, v, int(self.p[i]), int(self.q[i]), int(self.t[i]), int(self.f[i])


@dataclass(frozen=True)
class GlobalStats:
    n: int
    edge_count: int
    r: int | None
    T: int
    T_vertex: int
    tau: float | None
    t_vertex: np.ndarray
    f_vertex: np.ndarray
    sum_f_vertex: int
    sum_f_edge: int
    sum_p: int
    sum_q: int
    sum_indegree_sq: int
    out2claws: int

    def summary(self) -> dict:
        return {
            "n": self.n,
            "edge_count": self.edge_count,
            "r": self.r,
            "T": self.T,
            "tau": self.tau,
            "sum_f_vertex": self.sum_f_vertex,
            "sum_f_edge": self.sum_f_edge,
            "sum_p": self.sum_p,
            "sum_q": self.sum_q,
            "sum_indegree_sq": self.sum_indegree_sq,
            "out2claws": self.out2claws,
        }


def compute_edge_stats(d: Digraph) -> tuple[EdgeStats, GlobalStats]:
    """Exact counts for every edge plus the global sums.

    ``T`` is computed per edge (sum of ``t``) and per vertex (edges inside
    each out-neighbourhood, counted through in-rows); a mismatch raises.
    """
    t, f, common_in = kernels.edge_counts(d)
    edges = tuple(d.edges())
    outdeg = np.asarray(d.outdegrees(), dtype=np.int64)
    indeg = np.asarray(d.indegrees(), dtype=np.int64)
    if edges:
        heads = np.fromiter((v for _, v in edges), dtype=np.int64, count=len(edges))
        tails = np.fromiter((u for u, _ in edges), dtype=np.int64, count=len(edges))
    else:
        heads = tails = np.zeros(0, dtype=np.int64)
    p = outdeg[heads] - t
    q = indeg[tails] - common_in

    tv = kernels.vertex_triangles(d)
    fv = outdeg * (outdeg - 1) // 2 - tv
    T_edge, T_vertex = int(t.sum()), int(tv.sum())
    if T_edge != T_vertex:
        raise ArithmeticError(f"triangle counts disagree: per-edge {T_edge}, per-vertex {T_vertex}")

    r = d.outregular_degree()
    tau = T_edge / (d.n * r * r) if r else None
    gs = GlobalStats(
        n=d.n,
        edge_count=d.edge_count,
        r=r,
        T=T_edge,
        T_vertex=T_vertex,
        tau=tau,
        t_vertex=tv,
        f_vertex=fv,
        sum_f_vertex=int(fv.sum()),
        sum_f_edge=int(f.sum()),
        sum_p=int(p.sum()),
        sum_q=int(q.sum()),
        sum_indegree_sq=int((indeg * indeg).sum()),
        out2claws=int((outdeg * (outdeg - 1) // 2).sum()),
    )
    return EdgeStats(edges, p, q, t, f), gs


# --------------------------------------------------------------------------
# audits


def _lemma1(params: dict, terms: dict) -> tuple[float, float]:
    a, m = params["alpha"], params["m"]
    l2 = (1.0 - a) ** (m - 2)
    value = (1.0 - l2) / a * terms["r"] + terms["indeg_v"] + terms["q"] + l2 * terms["t"]
    return value, float(params["n"])


def _lemma3(params: dict, terms: dict) -> tuple[float, float]:
    return float(terms["indeg"]), params["a"] * terms["r"]


def _lemma4(params: dict, terms: dict) -> tuple[float, float]:
    return float(terms["sum_f_edge"]), params["b"] * terms["r"] * terms["sum_f_vertex"]


def _lemma5(params: dict, terms: dict) -> tuple[float, float]:
    bound = terms["n"] * terms["r"] ** 2 * math.sqrt(params["b"] * (0.5 - terms["tau"]))
    return float(terms["sum_sqrt_f_edge"]), bound


def _lemma6(params: dict, terms: dict) -> tuple[float, float]:
    a, m, cm = params["alpha"], params["m"], params["c"]
    l2 = (1.0 - a) ** (m - 2)
    l3 = (1.0 - a) ** (m - 3)
    value = (
        (1.0 - l2) / a * terms["r"]
        + terms["indeg_v"]
        + terms["q"]
        + l3 * (terms["t"] - math.sqrt(2.0 * cm * terms["f"]))
    )
    return value, float(params["n"])


def _tauineq1(params: dict, terms: dict) -> tuple[float, float]:
    a, m = params["alpha"], params["m"]
    l2 = (1.0 - a) ** (m - 2)
    return 2.0 - l2 / a, terms["tau"] * (1.0 - l2)


def _tauineq2(params: dict, terms: dict) -> tuple[float, float]:
    a, m = params["alpha"], params["m"]
    l2 = (1.0 - a) ** (m - 2)
    l3 = (1.0 - a) ** (m - 3)
    tau = terms["tau"]
    bound = tau * (1.0 - l3) + l3 * math.sqrt(params["b"] * params["c"] * (1.0 - 2.0 * tau))
    return 2.0 - l2 / a, bound


_EVALUATORS = {
    "lemma1": _lemma1,
    "lemma3": _lemma3,
    "lemma4": _lemma4,
    "lemma5": _lemma5,
    "lemma6": _lemma6,
    "tauineq1": _tauineq1,
    "tauineq2": _tauineq2,
}


@dataclass
class AuditItem:
    """One evaluated inequality ``value <= bound`` with the inputs that produced it."""

    inequality: str
    key: object
    terms: dict
    value: float
    bound: float

    @property
    def slack(self) -> float:
        return self.bound - self.value


@dataclass
class AuditReport:
    inequality: str
    params: dict
    items: list[AuditItem] = field(default_factory=list)
    tolerance: float = SLACK_TOL

    @property
    def violations(self) -> list[AuditItem]:
        return [it for it in self.items if it.slack < -self.tolerance]

    @property
    def verdict(self) -> str:
        return "violated" if self.violations else "all-hold"

    @property
    def min_slack(self) -> float | None:
        return min((it.slack for it in self.items), default=None)

    def validate(self) -> None:
        """Recompute every item from its stored terms; raise on any difference."""
        for it in self.items:
            value, bound = _EVALUATORS[it.inequality](self.params, it.terms)
            if value != it.value or bound != it.bound:
                raise ValueError(f"{it.inequality} item {it.key!r} does not recompute")

    def to_dict(self) -> dict:
        return {
            "inequality": self.inequality,
            "params": dict(self.params),
            "tolerance": self.tolerance,
            "verdict": self.verdict,
            "min_slack": self.min_slack,
            "items": [
                {
                    "inequality": it.inequality,
                    "key": list(it.key) if isinstance(it.key, tuple) else it.key,
                    "terms": dict(it.terms),
                    "value": it.value,
                    "bound": it.bound,
                    "slack": it.slack,
                }
                for it in self.items
            ],
        }

    @classmethod
    def from_dict(cls, obj: dict) -> AuditReport:
        items = []
        for raw in obj["items"]:
            key = tuple(raw["key"]) if isinstance(raw["key"], list) else raw["key"]
            items.append(AuditItem(raw["inequality"], key, dict(raw["terms"]), raw["value"], raw["bound"]))
        report = cls(obj["inequality"], dict(obj["params"]), items, obj.get("tolerance", SLACK_TOL))
        report.validate()
        if "verdict" in obj and obj["verdict"] != report.verdict:
            raise ValueError("stored verdict disagrees with recomputed slacks")
        return report


def _make(inequality: str, params: dict, key, terms: dict) -> AuditItem:
    value, bound = _EVALUATORS[inequality](params, terms)
    return AuditItem(inequality, key, terms, value, bound)


def require_candidate(d: Digraph, m: int) -> int:
    """Outdegree ``r`` of ``d`` if it is outregular and m-free; raise otherwise."""
    r = d.outregular_degree()
    if r is None:
        degs = d.outdegrees()
        v = degs.index(min(degs))
        raise NotOutregular(f"outdegrees range over {min(degs)}..{max(degs)}", vertex=v)
    ok, witness = is_m_free(d, m)
    if not ok:
        raise NotMFree(m, witness)
    return r


def _edge_terms(d: Digraph, es: EdgeStats, r: int, i: int) -> dict:
    u, v = es.edges[i]
    return {"r": r, "indeg_v": d.indeg(v), "q": int(es.q[i]), "t": int(es.t[i])}


def audit_lemma1(d: Digraph, alpha: float, m: int) -> AuditReport:
    """Per edge: ``(1-(1-a)^(m-2))/a * r + d-(v) + q + (1-a)^(m-2) t <= n``."""
    r = require_candidate(d, m)
    es, _ = compute_edge_stats(d)
    params = {"alpha": alpha, "m": m, "n": d.n}
    items = [_make("lemma1", params, es.edges[i], _edge_terms(d, es, r, i)) for i in range(len(es.edges))]
    return AuditReport("lemma1", params, items)


def audit_lemma3(d: Digraph, alpha: float, m: int) -> AuditReport:
    """Per vertex: ``d-(v) <= a_m r`` with ``a_m = (1-alpha)^(m-1)/alpha``."""
    r = require_candidate(d, m)
    a_m, _ = constants.ab(m, alpha)
    params = {"alpha": alpha, "m": m, "a": a_m}
    items = [_make("lemma3", params, v, {"r": r, "indeg": d.indeg(v)}) for v in range(d.n)]
    return AuditReport("lemma3", params, items)


def audit_lemma45(d: Digraph, m: int, b: float | None = None) -> AuditReport:
    """The two aggregate f-sum inequalities in one report.

    Lemma-4 item: ``sum_e f(e) <= b r sum_v f(v)``.
    Lemma-5 item: ``sum_e sqrt f(e) <= n r^2 sqrt(b (1/2 - tau))``.
    ``b`` defaults to ``b_m`` at the refined threshold for ``m``.
    """
    r = require_candidate(d, m)
    if b is None:
        b = constants.ab(m, constants.theorem2_alpha(m))[1]
    es, gs = compute_edge_stats(d)
    if gs.tau is None or gs.tau >= 0.5:
        raise TauOverHalf(f"tau={gs.tau} leaves the square-root bound undefined")
    params = {"m": m, "b": b}
    lemma4 = _make("lemma4", params, "lemma4", {"r": r, "sum_f_edge": gs.sum_f_edge, "sum_f_vertex": gs.sum_f_vertex})
    sqrt_sum = float(np.sqrt(es.f.astype(np.float64)).sum())
    lemma5 = _make("lemma5", params, "lemma5", {"n": d.n, "r": r, "sum_sqrt_f_edge": sqrt_sum, "tau": gs.tau})
    return AuditReport("lemma45", params, [lemma4, lemma5])


def audit_lemma6(d: Digraph, alpha: float, m: int, c: float | None = None) -> AuditReport:
    """Per edge, the lemma-1 bound with ``(1-a)^(m-2) t`` replaced by ``(1-a)^(m-3)(t - sqrt(2 c f))``."""
    r = require_candidate(d, m)
    if c is None:
        c = constants.c(m)
    es, _ = compute_edge_stats(d)
    params = {"alpha": alpha, "m": m, "n": d.n, "c": c}
    items = []
    for i in range(len(es.edges)):
        terms = _edge_terms(d, es, r, i)
        terms["f"] = int(es.f[i])
        items.append(_make("lemma6", params, es.edges[i], terms))
    return AuditReport("lemma6", params, items)


def audit_tau(d: Digraph, alpha: float, m: int, b: float | None = None, c: float | None = None) -> AuditReport:
    """Both density inequalities at the digraph's ``tau`` (one item each)."""
    require_candidate(d, m)
    _, gs = compute_edge_stats(d)
    if gs.tau is None or gs.tau >= 0.5:
        raise TauOverHalf(f"tau={gs.tau} is undefined or at least 1/2")
    if b is None:
        b = constants.ab(m, alpha)[1]
    if c is None:
        c = constants.c(m)
    params = {"alpha": alpha, "m": m, "b": b, "c": c}
    terms = {"tau": gs.tau}
    items = [_make("tauineq1", params, "tauineq1", terms), _make("tauineq2", params, "tauineq2", dict(terms))]
    return AuditReport("tau", params, items)
