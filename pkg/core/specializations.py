# ============================================================
# GDOF - MIMO Interference Channel GDoF Toolkit
# core/specializations.py — SISO, DoF, MAC and TIN Closed Forms
# ============================================================

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence

from core.gdof import (
    AntennaConfig,
    ExponentProfile,
    InvalidAntennaConfigError,
    PiecewiseLinearCurve,
    WeightedTerm,
    f_mac,
    pos,
)
from core.polytope import Halfspace, Point, Region2, region_from_halfspaces
from utils.helpers import RationalLike, to_fraction

ONE = Fraction(1)
ZERO = Fraction(0)
HALF = Fraction(1, 2)
TWO_THIRDS = Fraction(2, 3)


@dataclass(frozen=True)
class MacConfig:
    """Two transmitters (m1, m2 antennas) into one n-antenna receiver; user 2 at SNR ρ^alpha."""
    m1: int
    m2: int
    n: int
    alpha: Fraction

    def __post_init__(self):
        for name in ("m1", "m2", "n"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise InvalidAntennaConfigError(f"{name} must be a positive integer, got {value!r}")
        alpha = to_fraction(self.alpha)
        if alpha < 0:
            raise ValueError(f"alpha must be nonnegative, got {alpha}")
        object.__setattr__(self, "alpha", alpha)


def _row(c1, c2, rhs, label) -> Halfspace:
    return Halfspace((c1, c2), rhs, label=label)


# ── SISO ──────────────────────────────────────────────────────

def siso_region(exp: ExponentProfile) -> Region2:
    """Single-antenna GDoF region from its max/positive-part closed form."""
    a12, a21, a22 = exp.a12, exp.a21, exp.a22
    b12, b21 = exp.beta12, exp.beta21
    rx1_cross = max(a21, b12)
    rx2_cross = max(a12, b21)
    return region_from_halfspaces([
        _row(ONE, ZERO, ONE, "single1"),
        _row(ZERO, ONE, ONE, "single2"),
        _row(ONE, a22, max(a22, a12) + b12, "sum1"),
        _row(ONE, a22, max(ONE, a21) + b21, "sum2"),
        _row(ONE, a22, rx1_cross + rx2_cross, "sum3"),
        _row(2 * ONE, a22, max(ONE, a21) + b12 + rx2_cross, "double1"),
        _row(ONE, 2 * a22, max(a12, a22) + b21 + rx1_cross, "double2"),
    ])


# ── DoF (all exponents 1) ─────────────────────────────────────

def dof_sum_bound(cfg: AntennaConfig) -> int:
    M1, N1, M2, N2 = cfg.as_tuple()
    return min(M1 + M2, N1 + N2, max(M1, N2), max(M2, N1))


def dof_region(cfg: AntennaConfig) -> Region2:
    M1, N1, M2, N2 = cfg.as_tuple()
    return region_from_halfspaces([
        _row(ONE, ZERO, min(M1, N1), "single1"),
        _row(ZERO, ONE, min(M2, N2), "single2"),
        _row(ONE, ONE, dof_sum_bound(cfg), "sum"),
    ])


def dof_region_raw(cfg: AntennaConfig) -> Region2:
    """All seven DoF bounds before redundancy removal."""
    M1, N1, M2, N2 = cfg.as_tuple()
    z12, z21 = cfg.null12, cfg.null21
    # Cross receive dimensions left over after the other transmitter's null space.
    rx1_cross = min(N1, M2) + min(pos(N1 - M2), z12)
    rx2_cross = min(N2, M1) + min(pos(N2 - M1), z21)
    return region_from_halfspaces([
        _row(ONE, ZERO, min(M1, N1), "single1"),
        _row(ZERO, ONE, min(M2, N2), "single2"),
        _row(ONE, ONE, min(N2, M1 + M2) + min(N1, z12), "sum1"),
        _row(ONE, ONE, min(N1, M1 + M2) + min(N2, z21), "sum2"),
        _row(ONE, ONE, rx1_cross + rx2_cross, "sum3"),
        _row(2 * ONE, ONE, min(N1, M1 + M2) + min(N1, z12) + rx2_cross, "double1"),
        _row(ONE, 2 * ONE, min(N2, M1 + M2) + min(N2, z21) + rx1_cross, "double2"),
    ])


# ── MAC ───────────────────────────────────────────────────────

def mac_bounds(mac: MacConfig) -> List[Fraction]:
    """Right-hand sides of d1, d2 and d1 + d2."""
    return [
        Fraction(min(mac.m1, mac.n)),
        min(mac.m2, mac.n) * mac.alpha,
        f_mac(mac.n, WeightedTerm(mac.alpha, mac.m2), WeightedTerm(ONE, mac.m1)),
    ]


def mac_gdof_region(mac: MacConfig) -> Region2:
    single1, single2, total = mac_bounds(mac)
    return region_from_halfspaces([
        _row(ONE, ZERO, single1, "single1"),
        _row(ZERO, ONE, single2, "single2"),
        _row(ONE, ONE, total, "sum"),
    ])


def mac_corner_points(mac: MacConfig) -> List[Point]:
    """Corner formulas of the sum-rate face, valid for max(M1, M2) < N < M1 + M2."""
    M1, M2, N, a = mac.m1, mac.m2, mac.n, mac.alpha
    if not max(M1, M2) < N < M1 + M2:
        raise ValueError(f"Corner formulas need max(M1,M2) < N < M1+M2, got ({M1},{M2},{N})")
    if a < 1:
        return [(Fraction(M1), (N - M1) * a), ((N - M2) * a + M1 * (1 - a), M2 * a)]
    if a == 1:
        return [(Fraction(M1), Fraction(N - M1)), (Fraction(N - M2), Fraction(M2))]
    return [(Fraction(M1), (N - M1) + M2 * (a - 1)), (Fraction(N - M2), M2 * a)]


# ── Treating Interference as Noise ────────────────────────────

def tin_gdof(m: int, n: int, alpha: RationalLike) -> Fraction:
    """Per-user GDoF of the symmetric (m, n, m, n) channel when interference is treated as noise."""
    alpha = to_fraction(alpha)
    if alpha < 0:
        raise ValueError(f"alpha must be nonnegative, got {alpha}")
    return f_mac(n, WeightedTerm(alpha, m), WeightedTerm(ONE, m)) - min(m, n) * alpha


def tin_gdof_region(m: int, n: int, alpha: RationalLike) -> Region2:
    bound = tin_gdof(m, n, alpha)
    return region_from_halfspaces([
        _row(ONE, ZERO, bound, "tin1"),
        _row(ZERO, ONE, bound, "tin2"),
    ])


# ── Symmetric Curves ──────────────────────────────────────────

def symmetric_closed_form(m: int, n: int, alpha: RationalLike) -> Fraction:
    """Symmetric GDoF of the (m, n, m, n) channel under [1, α, α, 1]."""
    alpha = to_fraction(alpha)
    s, l = min(m, n), max(m, n)
    if alpha < HALF:
        d = s - (2 * s - l) * alpha
    elif alpha <= TWO_THIRDS:
        d = (l - s) + (2 * s - l) * alpha
    elif alpha <= 1:
        d = s - alpha / 2 * (2 * s - l)
    else:
        d = Fraction(l, 2) + Fraction(s, 2) * (alpha - 1)
    return min(Fraction(s), d)


def single_user_threshold(m: int, n: int) -> Fraction:
    """Smallest α at which each user of the (m, n, m, n) channel gets N, for m ≥ n."""
    if m < n:
        raise ValueError(f"Threshold defined for M ≥ N, got M={m}, N={n}")
    return 3 - Fraction(m, n)


def v_curve_1121(alpha: RationalLike) -> Fraction:
    """Symmetric GDoF of the (1, 1, 2, 1) channel."""
    alpha = to_fraction(alpha)
    if alpha <= 1:
        return 1 - alpha / 2
    if alpha <= 2:
        return alpha / 2
    return ONE


def default_alpha_grid(stop: RationalLike = 3, step: RationalLike = Fraction(1, 12)) -> List[Fraction]:
    stop, step = to_fraction(stop), to_fraction(step)
    if step <= 0:
        raise ValueError("step must be positive")
    grid, alpha = [], ZERO
    while alpha <= stop:
        grid.append(alpha)
        alpha += step
    return grid


class InsightCurve(str, Enum):
    W_CURVE = "w-curve-MgeN"
    V_CURVE_1121 = "v-curve-1121"
    TIN_OVERLAY = "tin-overlay"


def insight_curves(name: str, params: Optional[Mapping[str, Any]] = None) -> PiecewiseLinearCurve:
    """Named closed-form curves.

    params: `alphas` (sample grid) for all curves, `m` and `n` for w-curve-MgeN
    (m ≥ n) and tin-overlay.
    """
    try:
        curve = InsightCurve(name)
    except ValueError:
        raise ValueError(f"Unknown insight curve '{name}'; choose from {[c.value for c in InsightCurve]}")
    params = dict(params or {})

    if curve is InsightCurve.V_CURVE_1121:
        alphas = _alphas(params, default_alpha_grid(3, Fraction(1, 4)))
        return PiecewiseLinearCurve(points=tuple((a, v_curve_1121(a)) for a in alphas))

    m, n = int(params.get("m", 0)), int(params.get("n", 0))
    if m < 1 or n < 1:
        raise ValueError(f"'{curve.value}' needs positive m and n")

    if curve is InsightCurve.W_CURVE:
        if m < n:
            raise ValueError(f"w-curve-MgeN needs m ≥ n, got m={m}, n={n}")
        alphas = _alphas(params, default_alpha_grid(3, Fraction(1, 4)))
        return PiecewiseLinearCurve(points=tuple((a, symmetric_closed_form(m, n, a)) for a in alphas))

    alphas = _alphas(params, default_alpha_grid(HALF, Fraction(1, 20)))
    return PiecewiseLinearCurve(points=tuple((a, tin_gdof(m, n, a)) for a in alphas))


def _alphas(params: Dict[str, Any], default: Sequence[Fraction]) -> List[Fraction]:
    values = params.get("alphas")
    if values is None:
        return list(default)
    return [to_fraction(a) for a in values]
