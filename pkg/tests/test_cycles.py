from __future__ import annotations

import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import digraphs
from girthlab.constants import alpha as alpha_of
from girthlab.cycles import (
    CycleWitness,
    ExpansionTrace,
    expand_sets,
    find_short_cycle_constructive,
    find_short_cycle_detailed,
    girth,
    is_m_free,
    required_outdegree,
    shortest_cycle,
)
from girthlab.errors import DenseSubgraph, HypothesisViolated
from girthlab.graph import (
    circulant,
    directed_cycle,
    from_edge_list,
    random_mfree,
    random_outregular,
    transitive_tournament,
)
from oracles import adjacency, dfs_girth


def test_girth_examples():
    assert girth(directed_cycle(5)) == 5
    assert girth(transitive_tournament(6)) is None
    assert girth(circulant(7, {1, 2})) == 4
    assert girth(circulant(9, {1, 2, 3, 4})) == 3


def test_shortest_cycle_tie_breaks_to_smallest_source():
    w = shortest_cycle(circulant(9, {1, 2, 3, 4}))
    assert w.vertices[0] == 0 and w.length == 3
    w.validate(circulant(9, {1, 2, 3, 4}))


@given(digraphs(max_n=8))
def test_girth_matches_dfs(d):
    assert girth(d) == dfs_girth(d)


@given(digraphs(max_n=9), st.integers(2, 5))
def test_threads_do_not_change_witness(d, threads):
    assert shortest_cycle(d, threads=threads) == shortest_cycle(d, threads=1)


def test_is_m_free_examples():
    assert is_m_free(directed_cycle(5), 4) == (True, None)
    ok, w = is_m_free(directed_cycle(5), 5)
    assert not ok and w.length == 5
    ok, w = is_m_free(circulant(9, {1, 2, 3, 4}), 3)
    assert not ok and w.length == 3
    with pytest.raises(ValueError):
        is_m_free(directed_cycle(5), 2)


def test_witness_validation():
    d = directed_cycle(4)
    CycleWitness((0, 1, 2, 3)).validate(d)
    with pytest.raises(ValueError):
        CycleWitness((0, 2, 3, 1)).validate(d)
    with pytest.raises(ValueError):
        CycleWitness((0, 1))
    with pytest.raises(ValueError):
        CycleWitness((0, 1, 0))
    with pytest.raises(ValueError):
        CycleWitness((0, 1, 2), "guess")
    w = CycleWitness((0, 1, 2, 3), "expansion-disjointness")
    assert CycleWitness.from_dict(w.to_dict()) == w


# --------------------------------------------------------------------------
# set expansion


def replay(d, trace: ExpansionTrace) -> None:
    """Re-derive the trace's claims from plain sets."""
    out, inn = adjacency(d)
    if trace.mode == "indegree-lemma":
        v, u = trace.anchor, None
    else:
        u, v = trace.anchor
    nv = out[v]
    assert trace.base_sets["N+(v)"] == frozenset(nv)
    blocks = [set(s) for s in trace.base_sets.values()] + [set(layer) for layer in trace.layers]
    for a, b in itertools.combinations(blocks, 2):
        assert not a & b
    region = set(nv)
    total, bound = 0, 0.0
    for k, (layer, piv) in enumerate(zip(trace.layers, trace.pivots), start=1):
        w = piv.vertex
        assert all(layer_pivot == w for layer_pivot in layer.values())
        assert set(layer) == out[w] - region
        assert piv.outdeg == len(out[w])
        if k == 1 and trace.mode == "base-triangle":
            common = out[u] & nv
            assert w in common
            assert len(out[w] & common) <= trace.alpha * len(common)
            bound = len(out[w]) - trace.alpha * len(common) - (len(nv) - len(common))
        else:
            assert w in region
            assert len(out[w] & region) <= trace.alpha * len(region)
            bound = len(out[w]) - trace.alpha * len(nv) + (1 - trace.alpha) * bound
        total += len(layer)
        assert trace.cumulative_lower_bounds[k - 1] == pytest.approx(bound, abs=1e-12)
        assert total >= bound - 1e-9
        region |= set(layer)


def test_expand_m3_no_base_triangle_is_empty_trace():
    tr = expand_sets(directed_cycle(5), 0.3543, 3, (0, 1), "no-base-triangle")
    assert isinstance(tr, ExpansionTrace) and tr.k == 0
    replay(directed_cycle(5), tr)


def test_expand_base_triangle_finds_triangle():
    d = circulant(9, {1, 2, 3, 4})
    w = expand_sets(d, 0.3543, 3, (0, 1), "base-triangle")
    assert isinstance(w, CycleWitness) and w.length == 3
    w.validate(d)
    assert w.provenance == "expansion-disjointness"


def test_expand_one_layer_on_4_free_graph():
    a = 0.289
    found = 0
    for seed in range(6):
        d = random_mfree(14, 4, 0.5, seed)
        assert is_m_free(d, 4)[0]
        out, _ = adjacency(d)
        for u, v in d.edges():
            if out[u] & out[v] or not out[v]:
                continue
            try:
                tr = expand_sets(d, a, 4, (u, v), "no-base-triangle")
            except DenseSubgraph:
                continue
            assert isinstance(tr, ExpansionTrace), "a 4-free digraph cannot yield a short cycle"
            assert tr.k == 1
            replay(d, tr)
            piv = tr.pivots[0]
            assert len(tr.layers[0]) >= piv.outdeg - a * piv.subgraph_size
            found += 1
    assert found > 0


def test_expand_rejects_wrong_mode():
    d = circulant(9, {1, 2, 3, 4})
    with pytest.raises(HypothesisViolated):
        expand_sets(d, 0.35, 3, (0, 5), "base-triangle")  # not an edge
    with pytest.raises(HypothesisViolated):
        expand_sets(d, 0.35, 4, (0, 1), "no-base-triangle")  # t(0,1) > 0
    with pytest.raises(HypothesisViolated):
        expand_sets(directed_cycle(5), 0.35, 4, (0, 1), "base-triangle")
    with pytest.raises(ValueError):
        expand_sets(d, 0.35, 3, (0, 1), "sideways")


@given(st.integers(6, 20), st.integers(3, 6), st.floats(0.15, 0.45), st.integers(0, 10**6), st.data())
def test_expand_sets_replays(n, m, a, seed, data):
    r = data.draw(st.integers(1, (n - 1) // 2))
    d = random_outregular(n, r, seed)
    out, _ = adjacency(d)
    mode = data.draw(st.sampled_from(["edge", "indegree-lemma"]))
    if mode == "edge":
        u, v = data.draw(st.sampled_from(list(d.edges())))
        anchor, mode = (u, v), ("base-triangle" if out[u] & out[v] else "no-base-triangle")
    else:
        anchor = data.draw(st.integers(0, n - 1))
    try:
        res = expand_sets(d, a, m, anchor, mode)
    except DenseSubgraph as exc:
        # every vertex of the reported region is above the cap inside it
        reg = set(exc.vertices)
        assert all(len(out[x] & reg) > a * len(reg) for x in reg)
        return
    if isinstance(res, CycleWitness):
        res.validate(d)
        assert res.length <= m
    else:
        assert res.k == (m - 3 if mode == "no-base-triangle" else m - 2)
        replay(d, res)


# --------------------------------------------------------------------------
# constructive finder


def test_finder_examples():
    a = alpha_of(3)
    w, depth = find_short_cycle_constructive(circulant(9, {1, 2, 3, 4}), 3, a)
    assert w.length == 3
    w.validate(circulant(9, {1, 2, 3, 4}))
    d12 = circulant(12, {1, 2, 3, 4, 5})
    w, _ = find_short_cycle_constructive(d12, 3, a)
    assert w.length <= 3 and girth(d12) == 3


def test_finder_requires_outdegree():
    d = from_edge_list(9, [(i, i + 1) for i in range(8)])
    with pytest.raises(HypothesisViolated):
        find_short_cycle_constructive(d, 3, alpha_of(3))


@given(st.integers(9, 30), st.sampled_from([3, 4, 5]), st.integers(0, 10**6))
def test_finder_on_forced_outdegree(n, m, seed):
    a = alpha_of(m)
    r = required_outdegree(a, n)
    d = random_outregular(n, r, seed)
    res = find_short_cycle_detailed(d, m, a)
    res.witness.validate(d)
    assert res.witness.length <= m
    assert res.depth <= n


@given(st.integers(9, 30), st.sampled_from([3, 4, 5]), st.integers(0, 10**6), st.integers(0, 3))
def test_finder_on_dense_random_graphs(n, m, seed, extra):
    # outdegree above the threshold: pruning is exercised
    a = alpha_of(m)
    r = min(required_outdegree(a, n) + extra, (n - 1) // 2)
    d = random_outregular(n, r, seed)
    w, _ = find_short_cycle_constructive(d, m, a)
    w.validate(d)
    assert w.length <= m


def test_required_outdegree_is_ceiling():
    assert required_outdegree(0.5, 10) == 5
    assert required_outdegree(0.3543, 9) == math.ceil(0.3543 * 9)
