"""Numeric side: the outdegree thresholds and their certification.

``alpha(m)`` is the root in (0, 1) of ``(1-x)**(m-2) = 3x/(2-x)``; any
digraph with minimum outdegree at least ``alpha(m) * n`` has a directed
cycle of length at most ``m``. The refined thresholds ``BETA_TABLE`` rest
on a second inequality in the transitive-triangle density ``tau``, which
:func:`certify_theorem2` checks on a grid with a rigorous gap bound.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import DegenerateDenominator, GridTooCoarse, OutOfRange

# published tables, stored as data and never solved for
BETA_TABLE = {3: 0.35296, 4: 0.28688, 5: 0.24647, 6: 0.21851, 7: 0.19732, 8: 0.18068}
ALPHA_PRINTED = {3: 0.35425, 4: 0.28866, 5: 0.24817, 6: 0.21984, 7: 0.19856, 8: 0.18182}
A_PRINTED = {3: 1.18614, 4: 1.26411, 5: 1.30809, 6: 1.33396, 7: 1.35545, 8: 1.37055}
B_PRINTED = {3: 0.58522, 4: 0.61209, 5: 0.62543, 6: 0.63353, 7: 0.63888, 8: 0.64234}
TAU_STAR_PRINTED = {3: 0.4726, 4: 0.4625, 5: 0.4615, 6: 0.4673, 7: 0.4669, 8: 0.4688}
SHEN_PRINTED = 1.3121
C3 = 0.8616

SHEN_CONSTANT = 3.0 * math.log((2.0 + math.sqrt(7.0)) / 3.0)

DEFAULT_GRID = 1_000_000
FLOAT_MARGIN = 1e-12


def _check_m(m: int) -> None:
    if int(m) != m or m < 3:
        raise OutOfRange(f"m must be >= 3, got {m}")


# --------------------------------------------------------------------------
# alpha(m)


def alpha_equation(x: float, m: int) -> float:
    """``(1-x)**(m-2) - 3x/(2-x)``; strictly decreasing on (0, 1)."""
    return (1.0 - x) ** (m - 2) - 3.0 * x / (2.0 - x)


def bisect(f, lo: float, hi: float, tol: float = 1e-15) -> float:
    """Root of a function that is positive at ``lo`` and non-positive at ``hi``."""
    if not f(lo) > 0 >= f(hi):
        raise ValueError(f"bracket [{lo}, {hi}] does not straddle a sign change")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    return lo if abs(f(lo)) <= abs(f(hi)) else hi


def alpha(m: int, tol: float = 1e-15) -> float:
    _check_m(m)
    return bisect(lambda x: alpha_equation(x, m), 0.0, 1.0, tol)


def c(m: int) -> float:
    """Feedback-arc-set constant ``c_m``: every m-free digraph has ``beta <= c_m * gamma``."""
    _check_m(m)
    if m == 3:
        return C3
    if m == 4:
        return (3.0 - math.sqrt(5.0)) / 2.0
    if m == 5:
        return 2.0 - math.sqrt(3.0)
    return 1.0 / (m - 2)


def ab(m: int, alpha_val: float) -> tuple[float, float]:
    """``a = (1-alpha)**(m-1)/alpha`` and ``b = (a^2 c + 2a - 1) / (2a (1 + c))``."""
    _check_m(m)
    if not 0.0 < alpha_val < 1.0:
        raise OutOfRange(f"alpha must lie in (0, 1), got {alpha_val}")
    a = (1.0 - alpha_val) ** (m - 1) / alpha_val
    cm = c(m)
    if a == 0.0:
        return 0.0, math.nan
    b = (a * a * cm + 2.0 * a - 1.0) / (2.0 * a * (1.0 + cm))
    return a, b


def tau_star(m: int, alpha_val: float) -> float:
    """Smallest ``tau`` allowed by the first density inequality (equality point)."""
    _check_m(m)
    lm = (1.0 - alpha_val) ** (m - 2)
    den = 1.0 - lm
    if den <= 0.0:
        raise DegenerateDenominator(f"1 - (1-alpha)^(m-2) = {den} for m={m}, alpha={alpha_val}")
    return (2.0 - lm / alpha_val) / den


def theorem2_alpha(m: int) -> float:
    """Threshold at which the refined-inequality constants are evaluated."""
    return BETA_TABLE.get(m) or alpha(m)


# --------------------------------------------------------------------------
# Lambert W and comparison bounds


def lambert_w0(x: float, tol: float = 1e-14) -> float:
    """Principal real branch of the Lambert W function by Halley iteration.

    Converges to working precision; raises if the relative residual
    ``|w e^w - x| / max(1, |x|)`` ends above ``tol``.
    """
    if x < -1.0 / math.e:
        raise OutOfRange(f"W0 undefined below -1/e, got {x}")
    if x == 0.0:
        return 0.0
    if x < -0.25:
        p = math.sqrt(2.0 * (math.e * x + 1.0))
        w = -1.0 + p - p * p / 3.0
    elif x < math.e:
        w = math.log1p(x)
    else:
        lx = math.log(x)
        w = lx - math.log(lx)
    for _ in range(100):
        ew = math.exp(w)
        f = w * ew - x
        if f == 0.0 or w == -1.0:
            break
        step = f / (ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0))
        w_next = w - step
        if abs(w_next - w) <= 4e-16 * (1.0 + abs(w_next)):
            w = w_next
            break
        w = w_next
    residual = abs(w * math.exp(w) - x) / max(1.0, abs(x))
    if residual > tol:
        raise ArithmeticError(f"Halley iteration stalled: residual {residual:.3e} for x={x}")
    return w


def lambert_bound(m: int) -> float:
    """``W0(2(m - 2.5)/3) / (m - 2.5)``, an explicit upper bound on ``alpha(m)``."""
    _check_m(m)
    s = m - 2.5
    return lambert_w0(2.0 * s / 3.0) / s


def shen_bounds(m: int) -> tuple[float, float | None]:
    """``(3 ln((2+sqrt 7)/3) / (m-3), 1/(m-73) or None)``; defined for ``m >= 4``."""
    if int(m) != m or m < 4:
        raise OutOfRange(f"the general comparison bound needs m >= 4, got {m}")
    large = 1.0 / (m - 73) if m >= 74 else None
    return SHEN_CONSTANT / (m - 3), large


# --------------------------------------------------------------------------
# certificates


@dataclass
class Certificate:
    theorem: int
    m: int
    alpha_used: float
    verdict: str
    evidence: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.verdict == "certified"

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, obj: dict) -> Certificate:
        cert = cls(obj["theorem"], obj["m"], obj["alpha_used"], obj["verdict"], dict(obj.get("evidence", {})))
        if cert.verdict not in ("certified", "failed"):
            raise ValueError(f"unknown verdict {cert.verdict!r}")
        if cert.theorem == 1 and cert.verdict == "certified":
            ev = cert.evidence
            if not ev["lhs"] < ev["rhs"]:
                raise ValueError("certified theorem-1 certificate with lhs >= rhs")
        if cert.theorem == 2 and cert.verdict == "certified" and not cert.evidence.get("vacuous"):
            if not cert.evidence["worst_upper_bound"] < 0:
                raise ValueError("certified theorem-2 certificate with non-negative gap bound")
        return cert


def certify_theorem1(m: int, alpha_val: float | None = None, eps: float = 1e-9) -> Certificate:
    """Check that the summed edge inequality is contradictory at ``alpha_val``.

    With ``tau < 1/2`` the contradiction is exactly
    ``(1-alpha)**(m-2) <= 3 alpha / (2 - alpha)``; the default probes
    ``alpha(m) + eps``.
    """
    _check_m(m)
    root = alpha(m)
    a = root + eps if alpha_val is None else float(alpha_val)
    lhs = (1.0 - a) ** (m - 2)
    rhs = 3.0 * a / (2.0 - a)
    ok = lhs < rhs
    evidence = {
        "alpha_root": root,
        "root_residual": alpha_equation(root, m),
        "lhs": lhs,
        "rhs": rhs,
        "margin": rhs - lhs,
        "tau_star": tau_star(m, a),
    }
    return Certificate(1, m, a, "certified" if ok else "failed", evidence)


def _g_and_slope(tau: np.ndarray, m: int, a: float, b: float, cm: float):
    l2 = (1.0 - a) ** (m - 2)
    l3 = (1.0 - a) ** (m - 3)
    root = np.sqrt(np.maximum(1.0 - 2.0 * tau, 0.0))
    g = tau * (1.0 - l3) + l3 * np.sqrt(b * cm) * root - (2.0 - l2 / a)
    with np.errstate(divide="ignore"):
        slope = (1.0 - l3) - l3 * np.sqrt(b * cm) / root
    return g, slope


def certify_theorem2(m: int, alpha_val: float | None = None, grid: int = DEFAULT_GRID) -> Certificate:
    """Certify that the refined density inequality has no solution ``tau`` in ``[tau*, 1/2]``.

    ``g(tau) = tau (1 - L3) + L3 sqrt(b c (1 - 2 tau)) - (2 - L2/alpha)`` with
    ``Lk = (1-alpha)**(m-k)`` must be negative on the whole interval. ``g``
    is concave (its second derivative is ``-L3 sqrt(bc) (1-2tau)^(-3/2)``),
    so on each grid gap ``[t_i, t_{i+1}]`` we have
    ``g <= g(t_i) + max(g'(t_i), 0) * h``. The certificate is issued when
    every such bound is below ``-FLOAT_MARGIN``; the last gap, where ``g'``
    diverges to ``-inf``, needs no special treatment.

    Returns a ``failed`` certificate when some grid point has ``g >= 0``
    (that ``tau`` satisfies the inequality). Raises :class:`GridTooCoarse`
    if all samples are negative but some gap bound is not.
    """
    _check_m(m)
    if alpha_val is None:
        if m not in BETA_TABLE:
            raise OutOfRange(f"no published refined threshold for m={m}; pass alpha_val")
        alpha_val = BETA_TABLE[m]
    a = float(alpha_val)
    if not 0.0 < a < 1.0:
        raise OutOfRange(f"alpha must lie in (0, 1), got {a}")
    if grid < 2:
        raise ValueError("grid needs at least two points")
    cm = c(m)
    a_m, b_m = ab(m, a)
    ts = tau_star(m, a)
    evidence: dict = {"c": cm, "a": a_m, "b": b_m, "tau_star": ts, "grid": grid}

    if not b_m > 0.5:
        evidence["reason"] = "b <= 1/2: the small-neighbourhood case of the f-sum bound fails"
        return Certificate(2, m, a, "failed", evidence)
    lo = max(ts, 0.0)
    if lo >= 0.5:
        evidence.update(vacuous=True, reason="tau* >= 1/2 already contradicts tau < 1/2")
        return Certificate(2, m, a, "certified", evidence)

    tau = np.linspace(lo, 0.5, grid)
    g, slope = _g_and_slope(tau, m, a, b_m, cm)
    h = (0.5 - lo) / (grid - 1)
    upper = g[:-1] + np.maximum(slope[:-1], 0.0) * h
    i_max = int(np.argmax(g))
    j_max = int(np.argmax(upper))
    evidence.update(
        vacuous=False,
        interval=[lo, 0.5],
        spacing=h,
        max_sample=float(g[i_max]),
        argmax_tau=float(tau[i_max]),
        worst_upper_bound=float(upper[j_max]),
        worst_gap_start=float(tau[j_max]),
        max_slope=float(np.max(slope[:-1])),
        g_at_half=float(g[-1]),
        method="concave tangent bound per gap",
    )
    if g[i_max] >= 0.0:
        evidence["reason"] = f"inequality satisfied at tau={tau[i_max]:.9f}"
        return Certificate(2, m, a, "failed", evidence)
    if upper[j_max] >= -FLOAT_MARGIN:
        raise GridTooCoarse(grid, float(upper[j_max]))
    return Certificate(2, m, a, "certified", evidence)


def search_certified_alpha(m: int, grid: int = 200_000, tol: float = 1e-7) -> float:
    """Smallest refined threshold certified by :func:`certify_theorem2` (to ``tol``).

    A derived value, not a published one. Bisection between a failing lower
    end and ``alpha(m)`` (which is always certified).
    """
    _check_m(m)

    def ok(x: float) -> bool:
        try:
            return certify_theorem2(m, x, grid).certified
        except GridTooCoarse:
            return certify_theorem2(m, x, grid * 8).certified

    hi = alpha(m)
    lo = 0.5 * hi
    while ok(lo):
        lo *= 0.5
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


# --------------------------------------------------------------------------
# tables


@dataclass
class BoundSet:
    m: int
    alpha: float
    alpha_residual: float
    c: float
    beta_table: float | None
    ab_at: float
    a: float
    b: float
    tau_star: float
    lambert_bound: float
    shen_general: float | None
    shen_large: float | None
    best: str

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, obj: dict) -> BoundSet:
        row = cls(**obj)
        row.check()
        return row

    def check(self) -> None:
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha out of (0,1) for m={self.m}")
        if not abs(self.alpha_residual) < 1e-12:
            raise ValueError(f"alpha residual {self.alpha_residual} too large for m={self.m}")
        if abs(alpha_equation(self.alpha, self.m) - self.alpha_residual) > 1e-15:
            raise ValueError("stored residual does not recompute")


def bound_row(m: int) -> BoundSet:
    _check_m(m)
    al = alpha(m)
    beta = BETA_TABLE.get(m)
    at = beta if beta is not None else al
    a_m, b_m = ab(m, at)
    general, large = shen_bounds(m) if m >= 4 else (None, None)
    candidates = {"alpha": al, "shen_general": general, "shen_large": large}
    best = min((v, k) for k, v in candidates.items() if v is not None)[1]
    return BoundSet(
        m=m,
        alpha=al,
        alpha_residual=alpha_equation(al, m),
        c=c(m),
        beta_table=beta,
        ab_at=at,
        a=a_m,
        b=b_m,
        tau_star=tau_star(m, at),
        lambert_bound=lambert_bound(m),
        shen_general=general,
        shen_large=large,
        best=best,
    )


def bound_table(m_from: int, m_to: int) -> list[BoundSet]:
    _check_m(m_from)
    if m_to < m_from:
        raise OutOfRange(f"empty range {m_from}..{m_to}")
    return [bound_row(m) for m in range(m_from, m_to + 1)]
