# ============================================================
# GDOF - MIMO Interference Channel GDoF Toolkit
# core/gdof.py — Exact GDoF Region of the 2-user MIMO Interference Channel
# ============================================================

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from loguru import logger

from core.polytope import Halfspace, Region2, SplitRegion, region_from_halfspaces, sup_linear
from utils.helpers import RationalLike, to_fraction

ONE = Fraction(1)
ZERO = Fraction(0)


class InvalidAntennaConfigError(ValueError):
    """Antenna counts must be positive integers."""


class InvalidExponentError(ValueError):
    """Exponent profile is negative, non-rational, or not normalized to a11 = 1."""


def pos(x):
    """Positive part (x)^+."""
    return x if x > 0 else x * 0


# ── Domain Types ──────────────────────────────────────────────

@dataclass(frozen=True)
class AntennaConfig:
    """(M1, N1, M2, N2): antennas at Tx1, Rx1, Tx2, Rx2."""
    m1: int
    n1: int
    m2: int
    n2: int

    def __post_init__(self):
        for name in ("m1", "n1", "m2", "n2"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise InvalidAntennaConfigError(f"{name} must be a positive integer, got {value!r}")

    @classmethod
    def from_sequence(cls, values: Sequence[int]) -> "AntennaConfig":
        if len(values) != 4:
            raise InvalidAntennaConfigError(f"Expected 4 antenna counts, got {len(values)}")
        return cls(*values)

    def tx(self, i: int) -> int:
        return self.m1 if i == 1 else self.m2

    def rx(self, i: int) -> int:
        return self.n1 if i == 1 else self.n2

    def m(self, i: int, j: int) -> int:
        """m_ij = min(M_i, N_j)."""
        return min(self.tx(i), self.rx(j))

    def null(self, i: int, j: int) -> int:
        """(M_i - N_j)^+: null-space dimension of the cross link from Tx i to Rx j."""
        return max(self.tx(i) - self.rx(j), 0)

    @property
    def m12(self) -> int:
        return self.m(1, 2)

    @property
    def m21(self) -> int:
        return self.m(2, 1)

    @property
    def null12(self) -> int:
        return self.null(1, 2)

    @property
    def null21(self) -> int:
        return self.null(2, 1)

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.m1, self.n1, self.m2, self.n2)


@dataclass(frozen=True)
class ExponentProfile:
    """[a11, a12, a21, a22]: ρ_ij = ρ^a_ij, a_ij the exponent of the link Tx i → Rx j."""
    a11: Fraction
    a12: Fraction
    a21: Fraction
    a22: Fraction

    def __post_init__(self):
        for name in ("a11", "a12", "a21", "a22"):
            try:
                value = to_fraction(getattr(self, name))
            except ValueError as e:
                raise InvalidExponentError(f"{name}: {e}") from e
            if value < 0:
                raise InvalidExponentError(f"{name} must be nonnegative, got {value}")
            object.__setattr__(self, name, value)
        if self.a11 != 1:
            raise InvalidExponentError(f"a11 must equal 1 (got {self.a11}); rescale ρ instead")

    @classmethod
    def from_sequence(cls, values: Sequence[RationalLike]) -> "ExponentProfile":
        if len(values) != 4:
            raise InvalidExponentError(f"Expected 4 exponents, got {len(values)}")
        return cls(*values)

    @classmethod
    def symmetric(cls, alpha: RationalLike) -> "ExponentProfile":
        """[1, α, α, 1]."""
        return cls(ONE, alpha, alpha, ONE)

    def a(self, i: int, j: int) -> Fraction:
        return {(1, 1): self.a11, (1, 2): self.a12, (2, 1): self.a21, (2, 2): self.a22}[(i, j)]

    def beta(self, i: int, j: int) -> Fraction:
        """β_ij = (a_ii - a_ij)^+."""
        return pos(self.a(i, i) - self.a(i, j))

    @property
    def beta12(self) -> Fraction:
        return self.beta(1, 2)

    @property
    def beta21(self) -> Fraction:
        return self.beta(2, 1)

    def as_tuple(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a11, self.a12, self.a21, self.a22)


@dataclass(frozen=True)
class WeightedTerm:
    """(exponent, width): `width` transmit dimensions received at SNR ρ^exponent."""
    exponent: Fraction
    width: int

    def __post_init__(self):
        object.__setattr__(self, "exponent", to_fraction(self.exponent))
        if self.width < 0:
            raise ValueError(f"width must be ≥ 0, got {self.width}")


@dataclass(frozen=True)
class SplitTuple:
    """Private/public GDoF split (d1p, d1c, d2p, d2c)."""
    d1p: Fraction
    d1c: Fraction
    d2p: Fraction
    d2c: Fraction

    def __post_init__(self):
        for name in ("d1p", "d1c", "d2p", "d2c"):
            value = to_fraction(getattr(self, name))
            if value < 0:
                raise ValueError(f"{name} must be nonnegative, got {value}")
            object.__setattr__(self, name, value)

    @property
    def d1(self) -> Fraction:
        return self.d1p + self.d1c

    @property
    def d2(self) -> Fraction:
        return self.d2p + self.d2c

    def as_tuple(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.d1p, self.d1c, self.d2p, self.d2c)

    def __str__(self):
        return "(" + ", ".join(str(v) for v in self.as_tuple()) + ")"


class Bound7Form(str, Enum):
    """First term of the d1 + 2·a22·d2 bound."""
    DERIVED = "derived"          # f(N2, (a12, M1), (a22, M2))
    TRANSPOSED = "transposed"    # f(M2, (a21, N1), (a22, N2))


@dataclass(frozen=True)
class GdofBound:
    """A labeled bound; rhs·rate_scale is its value in units of log ρ."""
    halfspace: Halfspace
    rate_scale: Fraction = ONE

    @property
    def label(self) -> str:
        return self.halfspace.label

    @property
    def rate_rhs(self) -> Fraction:
        return self.halfspace.rhs * self.rate_scale


@dataclass(frozen=True)
class PiecewiseLinearCurve:
    """Exact (α, value) samples sorted by α; evaluation interpolates linearly between samples."""
    points: Tuple[Tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        ordered = sorted((to_fraction(x), to_fraction(y)) for x, y in self.points)
        for (x0, y0), (x1, y1) in zip(ordered, ordered[1:]):
            if x0 == x1 and y0 != y1:
                raise ValueError(f"Inconsistent values at α={x0}")
        deduped = tuple(p for k, p in enumerate(ordered) if k == 0 or p[0] != ordered[k - 1][0])
        object.__setattr__(self, "points", deduped)

    def __len__(self) -> int:
        return len(self.points)

    def __call__(self, alpha: RationalLike) -> Fraction:
        alpha = to_fraction(alpha)
        if not self.points or alpha < self.points[0][0] or alpha > self.points[-1][0]:
            raise ValueError(f"α={alpha} outside the sampled range")
        for (x0, y0), (x1, y1) in zip(self.points, self.points[1:]):
            if x0 <= alpha <= x1:
                return y0 + (alpha - x0) / (x1 - x0) * (y1 - y0)
        return self.points[-1][1]

    def alphas(self) -> List[Fraction]:
        return [x for x, _ in self.points]

    def values(self) -> List[Fraction]:
        return [y for _, y in self.points]

    def rows(self) -> List[Tuple[float, float]]:
        return [(float(x), float(y)) for x, y in self.points]

    def breakpoints(self) -> List[Tuple[Fraction, Fraction]]:
        """Samples where the slope changes (endpoints included)."""
        if len(self.points) <= 2:
            return list(self.points)
        kept = [self.points[0]]
        for prev, cur, nxt in zip(self.points, self.points[1:], self.points[2:]):
            left = (cur[1] - prev[1]) / (cur[0] - prev[0])
            right = (nxt[1] - cur[1]) / (nxt[0] - cur[0])
            if left != right:
                kept.append(cur)
        kept.append(self.points[-1])
        return kept


# ── MAC Sum-GDoF Functions ────────────────────────────────────

def _serve(u: int, terms: Iterable[WeightedTerm]) -> Fraction:
    # Strongest exponent first; sorted() is stable so ties keep input order.
    remaining = max(u, 0)
    total = ZERO
    for term in sorted(terms, key=lambda t: -t.exponent):
        taken = min(remaining, term.width)
        total += taken * pos(term.exponent)
        remaining -= taken
    return total


def f_mac(u: int, t1: WeightedTerm, t2: WeightedTerm) -> Fraction:
    """Sum GDoF of a 2-transmitter MIMO MAC with u receive antennas."""
    if u < 0:
        raise ValueError(f"u must be ≥ 0, got {u}")
    return _serve(u, (t1, t2))


def g_mac(u: int, t1: WeightedTerm, t2: WeightedTerm, t3: WeightedTerm) -> Fraction:
    """Sum GDoF of a 3-transmitter MIMO MAC with u receive antennas."""
    if u < 0:
        raise ValueError(f"u must be ≥ 0, got {u}")
    return _serve(u, (t1, t2, t3))


def _t(exponent: Fraction, width: int) -> WeightedTerm:
    return WeightedTerm(exponent, width)


# ── Region Assembly ───────────────────────────────────────────

def theorem_bounds(cfg: AntennaConfig, exp: ExponentProfile,
                   bound7: Bound7Form = Bound7Form.DERIVED) -> List[GdofBound]:
    """The seven outer-bound families, in order single1, single2, sum1..sum3, double1, double2."""
    M1, N1, M2, N2 = cfg.as_tuple()
    a12, a21, a22 = exp.a12, exp.a21, exp.a22
    b12, b21 = exp.beta12, exp.beta21
    m12, m21, z12, z21 = cfg.m12, cfg.m21, cfg.null12, cfg.null21

    rx2_all = f_mac(N2, _t(a12, M1), _t(a22, M2))
    rx1_all = f_mac(N1, _t(a21, M2), _t(ONE, M1))
    rx1_private = f_mac(N1, _t(b12, m12), _t(ONE, z12))
    rx2_private = f_mac(N2, _t(b21, m21), _t(a22, z21))
    rx1_cross = g_mac(N1, _t(a21, M2), _t(b12, m12), _t(ONE, z12))
    rx2_cross = g_mac(N2, _t(a12, M1), _t(b21, m21), _t(a22, z21))

    if bound7 is Bound7Form.TRANSPOSED:
        double2_head = f_mac(M2, _t(a21, N1), _t(a22, N2))
    else:
        double2_head = rx2_all

    def row(c1, c2, rhs, label, scale=ONE) -> GdofBound:
        return GdofBound(Halfspace((c1, c2), rhs, label=label), rate_scale=scale)

    return [
        row(ONE, ZERO, Fraction(min(M1, N1)), "single1"),
        row(ZERO, ONE, Fraction(min(M2, N2)), "single2", scale=a22),
        row(ONE, a22, rx2_all + rx1_private, "sum1"),
        row(ONE, a22, rx1_all + rx2_private, "sum2"),
        row(ONE, a22, rx1_cross + rx2_cross, "sum3"),
        row(2 * ONE, a22, rx1_all + rx1_private + rx2_cross, "double1"),
        row(ONE, 2 * a22, double2_head + rx2_private + rx1_cross, "double2"),
    ]


def gdof_region(cfg: AntennaConfig, exp: ExponentProfile,
                bound7: Bound7Form = Bound7Form.DERIVED) -> Region2:
    bounds = theorem_bounds(cfg, exp, bound7)
    region = region_from_halfspaces([b.halfspace for b in bounds])
    logger.debug(f"GDoF region {cfg.as_tuple()} {[str(a) for a in exp.as_tuple()]}: {len(region.vertices)} vertices")
    return region


_PRIVATE = {1: 0, 2: 2}
_PUBLIC = {1: 1, 2: 3}


def _receiver_split_bounds(cfg: AntennaConfig, exp: ExponentProfile, i: int) -> List[GdofBound]:
    j = 2 if i == 1 else 1
    a_ii, a_jj = exp.a(i, i), exp.a(j, j)
    a_ji = exp.a(j, i)  # interference exponent seen at Rx i
    b_ij = exp.beta(i, j)
    N_i, M_i, M_j, N_j = cfg.rx(i), cfg.tx(i), cfg.tx(j), cfg.rx(j)
    m_ij, z_ij = cfg.m(i, j), cfg.null(i, j)

    def row(weights, rhs, name, scale=ONE) -> GdofBound:
        coefficients = [ZERO] * 4
        for var, weight in weights:
            coefficients[var] = weight
        return GdofBound(Halfspace(tuple(coefficients), rhs, label=f"rx{i}.{name}"), rate_scale=scale)

    own_p, own_c, other_c = _PRIVATE[i], _PUBLIC[i], _PUBLIC[j]
    return [
        row([(own_p, a_ii)], f_mac(N_i, _t(b_ij, m_ij), _t(a_ii, z_ij)), "private"),
        row([(own_c, ONE)], Fraction(min(N_i, M_i, N_j)), "public", scale=a_ii),
        row([(other_c, a_jj)], min(N_i, M_j) * a_ji, "cross-public"),
        row([(own_p, ONE), (own_c, ONE)], Fraction(min(M_i, N_i)), "own", scale=a_ii),
        row([(own_p, a_ii), (other_c, a_jj)],
            g_mac(N_i, _t(a_ji, M_j), _t(b_ij, m_ij), _t(a_ii, z_ij)), "private+cross"),
        row([(own_c, a_ii), (other_c, a_jj)], f_mac(N_i, _t(a_ji, M_j), _t(a_ii, m_ij)), "publics"),
        row([(own_p, a_ii), (own_c, a_ii), (other_c, a_jj)],
            f_mac(N_i, _t(a_ji, M_j), _t(a_ii, M_i)), "all"),
    ]


def split_bounds(cfg: AntennaConfig, exp: ExponentProfile) -> List[GdofBound]:
    """Fourteen split constraints: seven decodability rows at Rx1, then seven at Rx2."""
    return _receiver_split_bounds(cfg, exp, 1) + _receiver_split_bounds(cfg, exp, 2)


def split_region(cfg: AntennaConfig, exp: ExponentProfile) -> SplitRegion:
    return SplitRegion(halfspaces=tuple(b.halfspace for b in split_bounds(cfg, exp)))


# ── Symmetric GDoF ────────────────────────────────────────────

def symmetric_gdof(cfg: AntennaConfig, exp: ExponentProfile) -> Fraction:
    """Half the largest d1 + d2 in the region."""
    return sup_linear(gdof_region(cfg, exp), (ONE, ONE)) / 2


def symmetric_curve(cfg: AntennaConfig, sweep: Iterable[RationalLike]) -> PiecewiseLinearCurve:
    points = []
    for alpha in sweep:
        alpha = to_fraction(alpha)
        points.append((alpha, symmetric_gdof(cfg, ExponentProfile.symmetric(alpha))))
    return PiecewiseLinearCurve(points=tuple(points))


def reciprocal(cfg: AntennaConfig, exp: ExponentProfile) -> Tuple[AntennaConfig, ExponentProfile]:
    """Swap transmit/receive roles and transpose the cross exponents."""
    return (
        AntennaConfig(cfg.n1, cfg.m1, cfg.n2, cfg.m2),
        ExponentProfile(exp.a11, exp.a21, exp.a12, exp.a22),
    )
