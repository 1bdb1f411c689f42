"""Short directed cycles in digraphs of large minimum outdegree.

Exact girth oracles, a constructive short-cycle finder, edge and triangle
statistics with inequality audits, feedback arc sets, and certified
numeric thresholds.
"""
from __future__ import annotations

__version__ = "0.1.0"

from .constants import (
    BETA_TABLE,
    BoundSet,
    Certificate,
    ab,
    alpha,
    bound_table,
    c,
    certify_theorem1,
    certify_theorem2,
    lambert_bound,
    lambert_w0,
    shen_bounds,
    tau_star,
)
from .cycles import (
    CycleWitness,
    ExpansionTrace,
    expand_sets,
    find_short_cycle_constructive,
    girth,
    is_m_free,
    shortest_cycle,
)
from .edgestats import (
    AuditReport,
    audit_lemma1,
    audit_lemma3,
    audit_lemma6,
    audit_lemma45,
    audit_tau,
    compute_edge_stats,
)
from .fas import FasResult, beta_exact, beta_heuristic, check_fact1, check_lemma2, sullivan_ratio
from .graph import (
    Digraph,
    GenSpec,
    circulant,
    directed_cycle,
    empty,
    from_edge_list,
    gamma,
    induced_subgraph,
    random_mfree,
    random_outregular,
    transitive_tournament,
)
from .kernels import BACKEND
