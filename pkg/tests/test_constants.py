from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import brentq
from scipy.special import lambertw

from girthlab import constants as C
from girthlab.errors import DegenerateDenominator, GridTooCoarse, OutOfRange


def scipy_alpha(m: int) -> float:
    return brentq(lambda x: (1 - x) ** (m - 2) - 3 * x / (2 - x), 1e-12, 1 - 1e-12, xtol=1e-16, rtol=1e-15)


@pytest.mark.parametrize("m", range(3, 51))
def test_alpha_matches_independent_root(m):
    a = C.alpha(m)
    assert 0 < a < 1
    assert abs(C.alpha_equation(a, m)) < 1e-12
    assert a == pytest.approx(scipy_alpha(m), abs=1e-13)


def test_alpha_closed_form_m3():
    assert C.alpha(3) == pytest.approx(3 - math.sqrt(7), abs=1e-14)


def test_alpha_m8_is_not_two_elevenths():
    # (9/11)^6 = 531441/1771561 while 3x/(2-x) at 2/11 is 3/10
    assert (9 / 11) ** 6 != pytest.approx(0.3, abs=1e-6)
    assert abs(C.alpha(8) - 2 / 11) > 3e-6


@given(st.integers(3, 60), st.floats(0.001, 0.999))
def test_alpha_is_unique_sign_change(m, x):
    a = C.alpha(m)
    h = C.alpha_equation(x, m)
    if x < a - 1e-12:
        assert h > 0
    elif x > a + 1e-12:
        assert h < 0


def test_alpha_decreasing():
    vals = [C.alpha(m) for m in range(3, 51)]
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_alpha_rejects_small_m():
    with pytest.raises(OutOfRange):
        C.alpha(2)


def test_c_values():
    assert C.c(3) == 0.8616
    assert C.c(4) == pytest.approx((3 - math.sqrt(5)) / 2)
    assert C.c(5) == pytest.approx(2 - math.sqrt(3))
    assert C.c(10) == 0.125


def test_ab_limits_and_ranges():
    a, _ = C.ab(3, 1 - 1e-9)
    assert a < 1e-15
    for m in range(3, 9):
        a, b = C.ab(m, C.BETA_TABLE[m])
        assert a > 1 and 0.5 < b < 1
    with pytest.raises(OutOfRange):
        C.ab(3, 0.0)


def test_tau_star_at_root_is_half():
    for m in range(3, 40):
        assert C.tau_star(m, C.alpha(m)) == pytest.approx(0.5, abs=1e-10)


def test_tau_star_degenerate():
    with pytest.raises(DegenerateDenominator):
        C.tau_star(3, 1e-300)  # (1 - alpha) rounds to 1


def test_beta_below_alpha():
    for m in range(3, 9):
        assert C.BETA_TABLE[m] < C.alpha(m)


@pytest.mark.parametrize("m", [3, 5, 8, 12, 40])
def test_theorem1_crossing(m):
    assert C.certify_theorem1(m).verdict == "certified"
    below = C.certify_theorem1(m, C.alpha(m) - 1e-9)
    assert below.verdict == "failed"


def test_theorem2_evidence_is_consistent():
    cert = C.certify_theorem2(6, 0.21851, grid=200_000)
    ev = cert.evidence
    assert cert.certified and not ev["vacuous"]
    assert ev["max_sample"] < 0 and ev["worst_upper_bound"] < 0
    assert ev["interval"] == [pytest.approx(C.tau_star(6, 0.21851)), 0.5]
    assert C.Certificate.from_dict(cert.to_dict()).certified


def test_theorem2_bound_dominates_dense_samples():
    # the tangent bound on a coarse grid must dominate g on a 50x finer grid
    m, a = 4, 0.28688
    cm = C.c(m)
    _, b = C.ab(m, a)
    lo = C.tau_star(m, a)
    coarse = np.linspace(lo, 0.5, 2001)
    g, slope = C._g_and_slope(coarse, m, a, b, cm)
    h = coarse[1] - coarse[0]
    upper = g[:-1] + np.maximum(slope[:-1], 0) * h
    fine = np.linspace(lo, 0.5, 100_001)
    gf, _ = C._g_and_slope(fine, m, a, b, cm)
    idx = np.minimum(((fine - lo) / h).astype(int), 1999)
    assert np.all(gf <= upper[idx] + 1e-13)


def test_theorem2_at_alpha_root_is_vacuous():
    cert = C.certify_theorem2(5, C.alpha(5) + 1e-12)
    assert cert.certified and cert.evidence["vacuous"]


def test_theorem2_weakened_alpha_fails():
    cert = C.certify_theorem2(3, 0.34)
    assert cert.verdict == "failed"
    assert cert.evidence["max_sample"] > 0


def test_grid_too_coarse():
    # a point close to the smallest certifiable value needs a fine grid
    b8 = C.search_certified_alpha(8, grid=100_000, tol=1e-8)
    with pytest.raises(GridTooCoarse):
        C.certify_theorem2(8, b8 + 2e-8, grid=3)


def test_search_certified_alpha_is_derived_boundary():
    b = C.search_certified_alpha(5, grid=100_000, tol=1e-7)
    assert b <= C.BETA_TABLE[5]
    assert C.certify_theorem2(5, b, 100_000).certified
    assert not C.certify_theorem2(5, b - 1e-6, 100_000).certified


def test_lambert_matches_scipy():
    for x in [-1 / math.e + 1e-12, -0.3, -0.1, 0.0, 1 / 3, 1.0, math.e, 10.0, 1e3, 1e8]:
        w = C.lambert_w0(x)
        assert w == pytest.approx(float(lambertw(x).real), rel=1e-13, abs=1e-13)
        assert abs(w * math.exp(w) - x) <= 1e-14 * max(1.0, abs(x))


def test_lambert_values():
    assert C.lambert_w0(0.0) == 0.0
    assert C.lambert_w0(1 / 3) == pytest.approx(0.2576276530497367, abs=1e-15)
    assert C.lambert_bound(3) == pytest.approx(2 * 0.2576276530497367, abs=1e-14)
    with pytest.raises(OutOfRange):
        C.lambert_w0(-1.0)


def test_lambert_dominates_alpha():
    for m in range(3, 51):
        assert C.alpha(m) <= C.lambert_bound(m)


def test_shen_bounds():
    general, large = C.shen_bounds(4)
    assert general == pytest.approx(1.3120224501, abs=1e-10)
    assert large is None
    assert C.shen_bounds(74)[1] == 1.0
    with pytest.raises(OutOfRange):
        C.shen_bounds(3)


def test_shen_crossover_is_13():
    first = next(m for m in range(4, 60) if C.shen_bounds(m)[0] < C.alpha(m))
    assert first == 13


def test_shen_crossover_against_refined_method_is_13():
    # smallest certifiable refined threshold (derived) still loses to the general bound at m = 13
    first = next(m for m in range(9, 20) if C.shen_bounds(m)[0] < C.search_certified_alpha(m, 50_000, 1e-6))
    assert first == 13


def test_bound_table():
    rows = C.bound_table(3, 8)
    assert [r.m for r in rows] == list(range(3, 9))
    for r in rows:
        assert r.beta_table == C.BETA_TABLE[r.m]
        assert r.alpha <= C.ALPHA_PRINTED[r.m]
        assert math.ceil(r.alpha * 1e5) / 1e5 == pytest.approx(C.ALPHA_PRINTED[r.m])
        assert C.BoundSet.from_dict(r.to_dict()) == r
    assert rows[0].shen_general is None and rows[0].best == "alpha"
    r74 = C.bound_row(74)
    assert r74.shen_large == 1.0 and r74.best == "shen_general"
    assert C.bound_row(13).best == "shen_general"
    with pytest.raises(OutOfRange):
        C.bound_table(5, 4)
