# ============================================================
# GDOF - MIMO Interference Channel GDoF Toolkit
# core/hk_scheme.py — Finite-SNR Channels, Rate-Split Covariances & Log-Det Bounds
# ============================================================

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from loguru import logger

from config import gap_config
from core.gdof import AntennaConfig, ExponentProfile
from core.specializations import MacConfig
from utils.helpers import RationalLike, to_fraction

RANK_THRESHOLD = 1e-9          # smallest singular value accepted for a sampled matrix
MAX_RESAMPLES = 100

# Multiples of (n1, n2) subtracted from the seven outer bounds.
GAP_MULTIPLES = ((1, 0), (0, 1), (1, 1), (1, 1), (1, 1), (2, 1), (1, 2))


class NonFiniteBoundError(ArithmeticError):
    """A log-det evaluation returned inf/nan."""


# ── Domain Types ──────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class ChannelInstance:
    """Channel matrices; h_ij maps Tx i (M_i antennas) to Rx j (N_j antennas)."""
    h11: np.ndarray   # N1 x M1
    h12: np.ndarray   # N2 x M1
    h21: np.ndarray   # N1 x M2
    h22: np.ndarray   # N2 x M2
    seed: int = 0

    def __post_init__(self):
        n1, m1 = self.h11.shape
        n2, m2 = self.h22.shape
        if self.h12.shape != (n2, m1) or self.h21.shape != (n1, m2):
            raise ValueError(
                f"Inconsistent shapes: h11 {self.h11.shape}, h12 {self.h12.shape}, "
                f"h21 {self.h21.shape}, h22 {self.h22.shape}"
            )

    @property
    def cfg(self) -> AntennaConfig:
        n1, m1 = self.h11.shape
        n2, m2 = self.h22.shape
        return AntennaConfig(m1, n1, m2, n2)

    def link(self, i: int, j: int) -> np.ndarray:
        return {(1, 1): self.h11, (1, 2): self.h12, (2, 1): self.h21, (2, 2): self.h22}[(i, j)]


@dataclass(frozen=True)
class SnrPoint:
    rho: float

    def __post_init__(self):
        if not self.rho > 1:
            raise ValueError(f"rho must exceed 1, got {self.rho}")

    def power(self, exponent: RationalLike) -> float:
        """ρ^exponent."""
        return self.rho ** float(to_fraction(exponent))


@dataclass(frozen=True, eq=False)
class CovariancePair:
    k_u: np.ndarray   # private
    k_w: np.ndarray   # public


@dataclass(frozen=True, eq=False)
class BeamDecomposition:
    user: int
    directions: np.ndarray        # columns are orthonormal beams
    private_powers: np.ndarray
    public_powers: np.ndarray
    singular_values: np.ndarray   # of the cross link, length m_ij
    r_values: np.ndarray          # M_i (1 + ρ^a_ij λ_k)

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.singular_values ** 2

    def null_directions(self) -> np.ndarray:
        return self.directions[:, len(self.singular_values):]

    def private_covariance(self) -> np.ndarray:
        return (self.directions * self.private_powers) @ self.directions.conj().T

    def public_covariance(self) -> np.ndarray:
        return (self.directions * self.public_powers) @ self.directions.conj().T


@dataclass(frozen=True)
class BoundValues:
    """Seven rate bounds in bits plus the gap constants they were built with."""
    i_b1: float
    i_b2: float
    i_b3: float
    i_b4: float
    i_b5: float
    i_b6: float
    i_b7: float
    n1: float = 0.0
    n2: float = 0.0
    tau12: float = 0.0
    tau21: float = 0.0

    def as_list(self) -> List[float]:
        return [self.i_b1, self.i_b2, self.i_b3, self.i_b4, self.i_b5, self.i_b6, self.i_b7]


@dataclass(frozen=True)
class SplitBoundValues:
    """Fourteen sub-message rate bounds in bits: seven at Rx1, then seven at Rx2."""
    values: Tuple[float, ...]
    tau12: float = 0.0
    tau21: float = 0.0


@dataclass(frozen=True)
class MacBoundValues:
    r1: float
    r2: float
    r_sum: float
    achievable: bool = False

    def as_list(self) -> List[float]:
        return [self.r1, self.r2, self.r_sum]


# ── Linear Algebra Helpers ────────────────────────────────────

def hermitize(a: np.ndarray) -> np.ndarray:
    return (a + a.conj().T) / 2


def complex_gaussian(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """i.i.d. circularly symmetric CN(0, 1) entries."""
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / math.sqrt(2)


def log2det_eye_plus(psd: np.ndarray, label: str = "") -> float:
    """log2 det(I + psd) through a Cholesky factor."""
    a = np.eye(psd.shape[0]) + hermitize(psd)
    try:
        value = 2.0 * float(np.sum(np.log2(np.real(np.diag(np.linalg.cholesky(a))))))
    except np.linalg.LinAlgError:
        logger.warning(f"Cholesky failed for {label or 'log-det'}; using eigenvalues")
        value = float(np.sum(np.log2(1.0 + np.clip(np.linalg.eigvalsh(hermitize(psd)), 0.0, None))))
    if not math.isfinite(value):
        raise NonFiniteBoundError(f"Non-finite log-det for {label or 'matrix'}")
    return value


def _gram(h: np.ndarray, k: Optional[np.ndarray] = None) -> np.ndarray:
    """h h† or h k h†."""
    if k is None:
        return h @ h.conj().T
    return h @ k @ h.conj().T


def _min_singular_value(h: np.ndarray) -> float:
    if h.size == 0:
        return math.inf
    return float(np.linalg.svd(h, compute_uv=False).min())


# ── Channel Sampling ──────────────────────────────────────────

def sample_channel(cfg: AntennaConfig, seed: int) -> ChannelInstance:
    M1, N1, M2, N2 = cfg.as_tuple()
    for attempt in range(MAX_RESAMPLES):
        current = seed + attempt
        rng = np.random.default_rng(current)
        ch = ChannelInstance(
            h11=complex_gaussian(rng, N1, M1),
            h12=complex_gaussian(rng, N2, M1),
            h21=complex_gaussian(rng, N1, M2),
            h22=complex_gaussian(rng, N2, M2),
            seed=current,
        )
        if min(_min_singular_value(h) for h in (ch.h11, ch.h12, ch.h21, ch.h22)) > RANK_THRESHOLD:
            return ch
        logger.warning(f"Rank-deficient channel draw for seed {current}; resampling")
    raise RuntimeError(f"No full-rank channel after {MAX_RESAMPLES} draws from seed {seed}")


def sample_mac_channel(mac: MacConfig, seed: int) -> Tuple[np.ndarray, np.ndarray]:
    """(H, G): N x M1 and N x M2 links of a two-user MAC."""
    rng = np.random.default_rng(seed)
    return complex_gaussian(rng, mac.n, mac.m1), complex_gaussian(rng, mac.n, mac.m2)


# ── Rate-Split Covariances ────────────────────────────────────

def _cross(i: int) -> Tuple[int, int]:
    return (i, 2 if i == 1 else 1)


def private_covariance(h_cross: np.ndarray, m: int, rho_cross: float) -> np.ndarray:
    """(1/M)(I + ρ_ij H_ij† H_ij)^-1, built from the eigenbasis of H_ij† H_ij."""
    eigvals, eigvecs = np.linalg.eigh(hermitize(h_cross.conj().T @ h_cross))
    eigvals = np.clip(eigvals, 0.0, None)
    scale = 1.0 / (m * (1.0 + rho_cross * eigvals))
    return hermitize((eigvecs * scale) @ eigvecs.conj().T)


def hk_covariances(ch: ChannelInstance, exp: ExponentProfile,
                   snr: SnrPoint) -> Tuple[CovariancePair, CovariancePair]:
    pairs = []
    for user in (1, 2):
        i, j = _cross(user)
        m = ch.cfg.tx(i)
        k_u = private_covariance(ch.link(i, j), m, snr.power(exp.a(i, j)))
        k_w = hermitize(np.eye(m) / m - k_u)
        pairs.append(CovariancePair(k_u=k_u, k_w=k_w))
    return pairs[0], pairs[1]


def beam_decomposition(ch: ChannelInstance, exp: ExponentProfile, snr: SnrPoint, user: int) -> BeamDecomposition:
    """Per-stream beams and powers of user `user`; beams past m_ij span the cross-link null space."""
    if user not in (1, 2):
        raise ValueError(f"user must be 1 or 2, got {user}")
    i, j = _cross(user)
    h = ch.link(i, j)
    m = h.shape[1]
    _, s, vh = np.linalg.svd(h, full_matrices=True)
    rho_cross = snr.power(exp.a(i, j))

    r = m * (1.0 + rho_cross * s ** 2)
    null_dims = m - len(s)
    private = np.concatenate([1.0 / r, np.full(null_dims, 1.0 / m)])
    public = np.concatenate([1.0 / m - 1.0 / r, np.zeros(null_dims)])
    return BeamDecomposition(
        user=user,
        directions=vh.conj().T,
        private_powers=private,
        public_powers=public,
        singular_values=s,
        r_values=r,
    )


# ── Gap Constants ─────────────────────────────────────────────

def default_gaps(cfg: AntennaConfig, n1: Optional[float] = None,
                 n2: Optional[float] = None) -> Tuple[float, float]:
    """N_i log2 max(M1, M2) unless overridden here or through GDOF_GAP_N1 / GDOF_GAP_N2."""
    n1 = gap_config.n1 if n1 is None else n1
    n2 = gap_config.n2 if n2 is None else n2
    base = math.log2(max(cfg.m1, cfg.m2))
    return (cfg.n1 * base if n1 is None else n1, cfg.n2 * base if n2 is None else n2)


def default_taus(cfg: AntennaConfig, tau12: Optional[float] = None,
                 tau21: Optional[float] = None) -> Tuple[float, float]:
    """(τ12, τ21); τ_ji is charged at Rx i."""
    tau12 = gap_config.tau12 if tau12 is None else tau12
    tau21 = gap_config.tau21 if tau21 is None else tau21
    base = math.log2(max(cfg.m1, cfg.m2))
    return (cfg.n2 * base if tau12 is None else tau12, cfg.n1 * base if tau21 is None else tau21)


# ── Log-Det Bounds ────────────────────────────────────────────

def outer_bound_values(ch: ChannelInstance, exp: ExponentProfile, snr: SnrPoint) -> BoundValues:
    cfg = ch.cfg
    (pair1, pair2) = hk_covariances(ch, exp, snr)
    k1, k2 = cfg.m1 * pair1.k_u, cfg.m2 * pair2.k_u
    p11, p12, p21, p22 = (snr.power(a) for a in exp.as_tuple())

    direct1 = log2det_eye_plus(p11 * _gram(ch.h11), "direct1")
    direct2 = log2det_eye_plus(p22 * _gram(ch.h22), "direct2")
    rx1_all = log2det_eye_plus(p21 * _gram(ch.h21) + p11 * _gram(ch.h11), "rx1_all")
    rx2_all = log2det_eye_plus(p12 * _gram(ch.h12) + p22 * _gram(ch.h22), "rx2_all")
    rx1_private = log2det_eye_plus(p11 * _gram(ch.h11, k1), "rx1_private")
    rx2_private = log2det_eye_plus(p22 * _gram(ch.h22, k2), "rx2_private")
    rx1_cross = log2det_eye_plus(p21 * _gram(ch.h21) + p11 * _gram(ch.h11, k1), "rx1_cross")
    rx2_cross = log2det_eye_plus(p12 * _gram(ch.h12) + p22 * _gram(ch.h22, k2), "rx2_cross")

    return BoundValues(
        i_b1=direct1,
        i_b2=direct2,
        i_b3=rx2_all + rx1_private,
        i_b4=rx1_all + rx2_private,
        i_b5=rx1_cross + rx2_cross,
        i_b6=rx1_all + rx1_private + rx2_cross,
        i_b7=rx2_all + rx2_private + rx1_cross,
    )


def achievable_bound_values(ch: ChannelInstance, exp: ExponentProfile, snr: SnrPoint,
                            gaps: Optional[Tuple[float, float]] = None) -> BoundValues:
    n1, n2 = default_gaps(ch.cfg) if gaps is None else gaps
    if n1 < 0 or n2 < 0:
        raise ValueError(f"Gap constants must be nonnegative, got ({n1}, {n2})")
    outer = outer_bound_values(ch, exp, snr).as_list()
    values = [max(v - (k1 * n1 + k2 * n2), 0.0) for v, (k1, k2) in zip(outer, GAP_MULTIPLES)]
    return BoundValues(*values, n1=n1, n2=n2)


def split_bound_values(ch: ChannelInstance, exp: ExponentProfile, snr: SnrPoint,
                       taus: Optional[Tuple[float, float]] = None) -> SplitBoundValues:
    """Sub-message rate bounds of the rate-split scheme, each reduced by τ_ji and clamped at 0.

    Row order per receiver i matches split_bounds: private, public, cross-public,
    own, private+cross, publics, all.
    """
    cfg = ch.cfg
    tau12, tau21 = default_taus(cfg) if taus is None else taus
    pairs = dict(zip((1, 2), hk_covariances(ch, exp, snr)))

    values: List[float] = []
    for i in (1, 2):
        j = 2 if i == 1 else 1
        tau = tau21 if i == 1 else tau12
        h_own, h_int = ch.link(i, i), ch.link(j, i)
        p_own, p_int = snr.power(exp.a(i, i)), snr.power(exp.a(j, i))
        m_i, m_j = cfg.tx(i), cfg.tx(j)

        floor = p_int * _gram(h_int, pairs[j].k_u)        # other user's private, at noise level
        own_private = p_own * _gram(h_own, pairs[i].k_u)
        own_public = p_own * _gram(h_own, pairs[i].k_w)
        own_full = p_own / m_i * _gram(h_own)
        int_full = p_int / m_j * _gram(h_int)

        rows = [
            own_private + floor,
            own_public + floor,
            int_full,
            own_full + floor,
            int_full + own_private,
            int_full + own_public,
            int_full + own_full,
        ]
        values += [max(log2det_eye_plus(r, f"rx{i}.split{k}") - tau, 0.0) for k, r in enumerate(rows)]
    return SplitBoundValues(values=tuple(values), tau12=tau12, tau21=tau21)


def tin_rates(ch: ChannelInstance, alpha: RationalLike, snr: SnrPoint) -> Tuple[float, float]:
    """Single-user decoding rates with the other signal treated as noise."""
    cfg = ch.cfg
    if cfg.m1 != cfg.m2 or cfg.n1 != cfg.n2:
        raise ValueError(f"TIN rates need a symmetric (M,N,M,N) channel, got {cfg.as_tuple()}")
    p, pa = snr.rho, snr.power(alpha)
    rates = []
    for own, interferer in ((ch.h11, ch.h21), (ch.h22, ch.h12)):
        noise = pa * _gram(interferer)
        total = log2det_eye_plus(p * _gram(own) + noise, "tin_total")
        rates.append(total - log2det_eye_plus(noise, "tin_noise"))
    return rates[0], rates[1]


def mac_bound_values(h: np.ndarray, g: np.ndarray, alpha: RationalLike, snr: SnrPoint,
                     achievable: bool = False) -> MacBoundValues:
    """Two-user MAC bounds: user 1 (h) at ρ, user 2 (g) at ρ^alpha."""
    n, m1 = h.shape
    m2 = g.shape[1]
    pa = snr.power(alpha)
    r1 = log2det_eye_plus(snr.rho * _gram(h), "mac_r1")
    r2 = log2det_eye_plus(pa * _gram(g), "mac_r2")
    r_sum = log2det_eye_plus(snr.rho * _gram(h) + pa * _gram(g), "mac_sum")
    if achievable:
        r1 = max(r1 - n * math.log2(m1), 0.0)
        r2 = max(r2 - n * math.log2(m2), 0.0)
        r_sum = max(r_sum - n * math.log2(max(m1, m2)), 0.0)
    return MacBoundValues(r1=r1, r2=r2, r_sum=r_sum, achievable=achievable)
