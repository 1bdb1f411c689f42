from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import digraphs
from girthlab.constants import c as c_of
from girthlab.errors import GammaZero, NotMFree, TooLarge
from girthlab.fas import (
    UNVERIFIED,
    backward_edges,
    beta_exact,
    beta_heuristic,
    check_fact1,
    check_lemma2,
    sullivan_ratio,
)
from girthlab.graph import (
    circulant,
    directed_cycle,
    empty,
    gamma,
    random_mfree,
    relabel,
    transitive_tournament,
)
from oracles import brute_fas, is_acyclic


def test_small_examples():
    res = beta_exact(transitive_tournament(5))
    assert res.beta == 0 and res.order == (0, 1, 2, 3, 4)
    assert beta_exact(directed_cycle(5)).beta == 1
    assert beta_heuristic(directed_cycle(5)).beta == 1
    assert beta_heuristic(transitive_tournament(7)).beta == 0
    assert beta_exact(empty(0)).beta == 0


def test_circulant_7_matches_factorial_search():
    d = circulant(7, {1, 2})
    assert beta_exact(d).beta == brute_fas(d) == 3


def test_too_large():
    with pytest.raises(TooLarge):
        beta_exact(directed_cycle(21))


def _check_result(d, res):
    res.check(d)
    kept = [e for e in d.edges() if e not in set(res.removed)]
    assert is_acyclic(d.n, kept)
    assert res.removed == backward_edges(d, res.order)


@given(digraphs(max_n=7))
def test_exact_matches_brute_force(d):
    res = beta_exact(d)
    _check_result(d, res)
    assert res.exact and res.beta == brute_fas(d)


@given(digraphs(max_n=11))
def test_heuristic_is_upper_bound(d):
    ex, he = beta_exact(d), beta_heuristic(d)
    _check_result(d, he)
    assert not he.exact
    assert ex.beta <= he.beta


@given(digraphs(max_n=10), st.randoms())
def test_exact_relabel_invariant(d, rnd):
    perm = list(range(d.n))
    rnd.shuffle(perm)
    assert beta_exact(relabel(d, perm)).beta == beta_exact(d).beta


def test_heuristic_large_circulant_sanity():
    from girthlab.graph import induced_subgraph

    d = circulant(30, {1, 2, 3})
    he = beta_heuristic(d)
    _check_result(d, he)
    for start in (0, 5, 10):
        sub, _ = induced_subgraph(d, range(start, start + 20))
        assert beta_exact(sub).beta <= he.beta


def test_fact1_examples():
    rep = check_fact1(directed_cycle(5), 4)
    assert (rep["beta"], rep["gamma"]) == (1, 5)
    assert rep["c_m"] == pytest.approx((3 - math.sqrt(5)) / 2)
    assert rep["holds"] is True
    assert check_fact1(transitive_tournament(5), 3)["holds"] is True
    rep = check_fact1(circulant(7, {1, 2}), 3)
    assert rep["threshold"] == pytest.approx(0.8616 * 7)
    assert rep["holds"] is True
    with pytest.raises(NotMFree):
        check_fact1(circulant(9, {1, 2, 3, 4}), 3)


def test_fact1_large_is_unverified():
    d = random_mfree(24, 3, 0.5, seed=2)
    rep = check_fact1(d, 3)
    assert rep["holds"] == UNVERIFIED and rep["exact"] is False


def test_lemma2_examples():
    rep = check_lemma2(transitive_tournament(5), 3)
    assert rep["bound"] == 0 and rep["min_outdeg"] == 0 and rep["holds"]
    assert rep["witness_vertex"] == 4
    rep = check_lemma2(directed_cycle(5), 4)
    assert rep["bound"] == pytest.approx(math.sqrt(2 * c_of(4) * 5))
    assert rep["holds"]


@pytest.mark.parametrize("seed", range(25))
def test_lemma2_sweep(seed):
    assert check_lemma2(random_mfree(12, 5, 1.0, seed), 5)["holds"]


@given(st.integers(1, 14), st.sampled_from([3, 4, 5]), st.floats(0.2, 1.0), st.integers(0, 10**6))
def test_fact1_and_lemma2_on_mfree(n, m, density, seed):
    d = random_mfree(n, m, density, seed)
    assert check_fact1(d, m)["holds"] is True
    assert check_lemma2(d, m)["holds"]


def test_sullivan_ratio():
    rep = sullivan_ratio(directed_cycle(5), 4)
    assert rep["ratio"] == pytest.approx(0.2) and rep["conjectured"] == pytest.approx(0.2)
    with pytest.raises(GammaZero):
        sullivan_ratio(transitive_tournament(4), 3)
    rep = sullivan_ratio(circulant(11, {1, 2}), 5)
    assert rep["gamma"] == gamma(circulant(11, {1, 2})) == 33
    assert rep["conjectured"] == pytest.approx(2 / 18)
