# ============================================================
# GDOF - MIMO Interference Channel GDoF Toolkit
# core/numeric_verify.py — Monte Carlo Slope Checks of the GDoF Formulas
# ============================================================

import math
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from core.gdof import (
    AntennaConfig,
    Bound7Form,
    ExponentProfile,
    WeightedTerm,
    f_mac,
    g_mac,
    split_bounds,
    theorem_bounds,
)
from core.hk_scheme import (
    SnrPoint,
    complex_gaussian,
    log2det_eye_plus,
    mac_bound_values,
    outer_bound_values,
    sample_channel,
    sample_mac_channel,
    split_bound_values,
)
from core.specializations import MacConfig, mac_bounds
from utils.helpers import rational_to_json

DEFAULT_RHO_PAIR = (1e6, 1e9)
DEFAULT_TOLERANCE = 0.05
DEFAULT_TRIALS = 5
OUTLIER_FACTOR = 3             # no single trial may miss by more than 3x the tolerance

F = Fraction
EXAMPLE_CFG = AntennaConfig(3, 3, 2, 2)
EXAMPLE_EXP = ExponentProfile(1, F(3, 5), F(3, 5), 1)

# Instances checked by the two-term and three-term suites.
MAC2_CASES: Tuple[Tuple[int, WeightedTerm, WeightedTerm], ...] = (
    (8, WeightedTerm(F(1, 2), 3), WeightedTerm(1, 4)),
    (2, WeightedTerm(1, 2), WeightedTerm(F(1, 2), 2)),
    (3, WeightedTerm(0, 2), WeightedTerm(0, 2)),
    (2, WeightedTerm(F(7, 10), 1), WeightedTerm(F(3, 10), 3)),
)
MAC3_CASES: Tuple[Tuple[int, WeightedTerm, WeightedTerm, WeightedTerm], ...] = (
    (10, WeightedTerm(F(1, 2), 3), WeightedTerm(1, 4), WeightedTerm(F(6, 5), 2)),
    (3, WeightedTerm(1, 1), WeightedTerm(F(3, 5), 2), WeightedTerm(F(2, 5), 2)),
)
MAC_REGION_CASES: Tuple[MacConfig, ...] = (
    MacConfig(2, 2, 3, F(1, 2)),
    MacConfig(2, 2, 5, F(1, 2)),
    MacConfig(1, 2, 2, F(3, 2)),
)


@dataclass
class SlopeReport:
    """Predicted GDoF (log ρ units) against a two-point finite-SNR slope."""
    label: str
    trial: int
    predicted: Fraction
    estimated: float
    rho_pair: Tuple[float, float]
    tolerance: float = DEFAULT_TOLERANCE

    @property
    def abs_error(self) -> float:
        return abs(self.estimated - float(self.predicted))

    @property
    def passed(self) -> bool:
        return self.abs_error <= self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "trial": self.trial,
            "predicted": rational_to_json(self.predicted),
            "estimated": self.estimated,
            "abs_error": self.abs_error,
            "pass": self.passed,
        }

    def __repr__(self):
        status = "PASS" if self.passed else "FAIL"
        return f"<SlopeReport {self.label}#{self.trial} {status} predicted={self.predicted} estimated={self.estimated:.4f}>"


@dataclass
class BoundVerdict:
    """All trials of one bound; the verdict follows the median error."""
    label: str
    predicted: Fraction
    errors: List[float]
    tolerance: float = DEFAULT_TOLERANCE

    @property
    def median_error(self) -> float:
        return statistics.median(self.errors)

    @property
    def max_error(self) -> float:
        return max(self.errors)

    @property
    def within_cap(self) -> bool:
        return self.max_error <= OUTLIER_FACTOR * self.tolerance

    @property
    def passed(self) -> bool:
        return self.median_error <= self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "predicted": rational_to_json(self.predicted),
            "trials": len(self.errors),
            "median_error": self.median_error,
            "max_error": self.max_error,
            "pass": self.passed,
        }


def group_verdicts(reports: Sequence[SlopeReport]) -> List[BoundVerdict]:
    """One verdict per label, in first-seen order."""
    verdicts: Dict[str, BoundVerdict] = {}
    for r in reports:
        if r.label not in verdicts:
            verdicts[r.label] = BoundVerdict(r.label, r.predicted, [], r.tolerance)
        verdicts[r.label].errors.append(r.abs_error)
    return list(verdicts.values())


@dataclass
class SuiteResult:
    suite: str
    reports: List[SlopeReport] = field(default_factory=list)

    def verdicts(self) -> List[BoundVerdict]:
        return group_verdicts(self.reports)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts())

    def median_error(self) -> float:
        return statistics.median(r.abs_error for r in self.reports) if self.reports else 0.0

    def within_share(self) -> float:
        """Fraction of individual trials inside the tolerance."""
        if not self.reports:
            return 1.0
        return sum(r.passed for r in self.reports) / len(self.reports)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "verdicts": [v.to_dict() for v in self.verdicts()],
            "reports": [r.to_dict() for r in self.reports],
            "within_share": self.within_share(),
            "pass": self.passed,
        }


# ── Slope Primitive ───────────────────────────────────────────

def slope_estimate(evaluator: Callable[[float], float], rho_lo: float, rho_hi: float) -> float:
    """Bits gained per doubling of ρ between rho_lo and rho_hi."""
    if not 1 < rho_lo < rho_hi:
        raise ValueError(f"Need 1 < rho_lo < rho_hi, got ({rho_lo}, {rho_hi})")
    return (evaluator(rho_hi) - evaluator(rho_lo)) / (math.log2(rho_hi) - math.log2(rho_lo))


def trial_seed(seed: int, index: int) -> int:
    return seed ^ index


def _run_trials(trials: int, work: Callable[[int], List[SlopeReport]], workers: int = 1) -> List[SlopeReport]:
    # map() keeps trial order regardless of completion order.
    if workers <= 1 or trials <= 1:
        batches = [work(k) for k in range(trials)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(work, range(trials)))
    return [report for batch in batches for report in batch]


def _mac_logdet(matrices: Sequence[np.ndarray], terms: Sequence[WeightedTerm], rho: float) -> float:
    u = matrices[0].shape[0]
    total = np.zeros((u, u), dtype=complex)
    for h, term in zip(matrices, terms):
        total = total + rho ** float(term.exponent) * (h @ h.conj().T)
    return log2det_eye_plus(total, "mac")


def _verify_mac_terms(u: int, terms: Sequence[WeightedTerm], predicted: Fraction, label: str,
                      trials: int, seed: int, rho_pair: Tuple[float, float],
                      tolerance: float, workers: int) -> List[SlopeReport]:
    if any(t.width < 0 for t in terms) or u < 0:
        raise ValueError("Widths and u must be nonnegative")

    def work(k: int) -> List[SlopeReport]:
        rng = np.random.default_rng(trial_seed(seed, k))
        matrices = [complex_gaussian(rng, u, t.width) for t in terms]
        estimated = slope_estimate(lambda rho: _mac_logdet(matrices, terms, rho), *rho_pair)
        return [SlopeReport(label, k, predicted, estimated, rho_pair, tolerance)]

    return _run_trials(trials, work, workers)


def _term_label(u: int, terms: Sequence[WeightedTerm]) -> str:
    return f"u={u} " + " ".join(f"({t.exponent},{t.width})" for t in terms)


# ── Verification Operations ───────────────────────────────────

def verify_f_approx(u: int, t1: WeightedTerm, t2: WeightedTerm, trials: int = DEFAULT_TRIALS, seed: int = 0,
                    rho_pair: Tuple[float, float] = DEFAULT_RHO_PAIR, tolerance: float = DEFAULT_TOLERANCE,
                    workers: int = 1) -> List[SlopeReport]:
    predicted = f_mac(u, t1, t2)
    return _verify_mac_terms(u, (t1, t2), predicted, "f " + _term_label(u, (t1, t2)),
                             trials, seed, rho_pair, tolerance, workers)


def verify_g_approx(u: int, t1: WeightedTerm, t2: WeightedTerm, t3: WeightedTerm, trials: int = DEFAULT_TRIALS,
                    seed: int = 0, rho_pair: Tuple[float, float] = DEFAULT_RHO_PAIR,
                    tolerance: float = DEFAULT_TOLERANCE, workers: int = 1) -> List[SlopeReport]:
    predicted = g_mac(u, t1, t2, t3)
    return _verify_mac_terms(u, (t1, t2, t3), predicted, "g " + _term_label(u, (t1, t2, t3)),
                             trials, seed, rho_pair, tolerance, workers)


def verify_theorem1(cfg: AntennaConfig, exp: ExponentProfile, trials: int = DEFAULT_TRIALS, seed: int = 0,
                    rho_pair: Tuple[float, float] = DEFAULT_RHO_PAIR, tolerance: float = DEFAULT_TOLERANCE,
                    workers: int = 1, bound7: Bound7Form = Bound7Form.DERIVED) -> List[SlopeReport]:
    """Slopes of the seven outer log-det bounds against the exact region bounds."""
    bounds = theorem_bounds(cfg, exp, bound7)

    def work(k: int) -> List[SlopeReport]:
        ch = sample_channel(cfg, trial_seed(seed, k))
        lo = outer_bound_values(ch, exp, SnrPoint(rho_pair[0])).as_list()
        hi = outer_bound_values(ch, exp, SnrPoint(rho_pair[1])).as_list()
        span = math.log2(rho_pair[1]) - math.log2(rho_pair[0])
        return [
            SlopeReport(b.label, k, b.rate_rhs, (h - l) / span, rho_pair, tolerance)
            for b, l, h in zip(bounds, lo, hi)
        ]

    return _run_trials(trials, work, workers)


def verify_bound7_forms(cfg: AntennaConfig, exp: ExponentProfile, trials: int = DEFAULT_TRIALS, seed: int = 0,
                        rho_pair: Tuple[float, float] = DEFAULT_RHO_PAIR,
                        tolerance: float = DEFAULT_TOLERANCE) -> List[Tuple[SlopeReport, SlopeReport]]:
    """Compare both candidate forms of the d1 + 2·a22·d2 bound against the same slope."""
    derived = theorem_bounds(cfg, exp, Bound7Form.DERIVED)[6].rate_rhs
    transposed = theorem_bounds(cfg, exp, Bound7Form.TRANSPOSED)[6].rate_rhs
    pairs = []
    for k in range(trials):
        ch = sample_channel(cfg, trial_seed(seed, k))
        estimated = slope_estimate(lambda rho: outer_bound_values(ch, exp, SnrPoint(rho)).i_b7, *rho_pair)
        pairs.append((
            SlopeReport("double2/derived", k, derived, estimated, rho_pair, tolerance),
            SlopeReport("double2/transposed", k, transposed, estimated, rho_pair, tolerance),
        ))
    return pairs


def verify_split_bounds(cfg: AntennaConfig, exp: ExponentProfile, trials: int = DEFAULT_TRIALS, seed: int = 0,
                        rho_pair: Tuple[float, float] = DEFAULT_RHO_PAIR, tolerance: float = DEFAULT_TOLERANCE,
                        workers: int = 1) -> List[SlopeReport]:
    """Slopes of the fourteen sub-message rate bounds against the exact split constraints."""
    bounds = split_bounds(cfg, exp)
    span = math.log2(rho_pair[1]) - math.log2(rho_pair[0])

    def work(k: int) -> List[SlopeReport]:
        ch = sample_channel(cfg, trial_seed(seed, k))
        lo = split_bound_values(ch, exp, SnrPoint(rho_pair[0]), taus=(0.0, 0.0)).values
        hi = split_bound_values(ch, exp, SnrPoint(rho_pair[1]), taus=(0.0, 0.0)).values
        return [
            SlopeReport(b.label, k, b.rate_rhs, (h - l) / span, rho_pair, tolerance)
            for b, l, h in zip(bounds, lo, hi)
        ]

    return _run_trials(trials, work, workers)


def verify_mac(mac: MacConfig, trials: int = DEFAULT_TRIALS, seed: int = 0,
               rho_pair: Tuple[float, float] = DEFAULT_RHO_PAIR, tolerance: float = DEFAULT_TOLERANCE,
               workers: int = 1) -> List[SlopeReport]:
    labels = ("mac.single1", "mac.single2", "mac.sum")
    predicted = mac_bounds(mac)
    span = math.log2(rho_pair[1]) - math.log2(rho_pair[0])
    tag = f"({mac.m1},{mac.m2},{mac.n},{mac.alpha})"

    def work(k: int) -> List[SlopeReport]:
        h, g = sample_mac_channel(mac, trial_seed(seed, k))
        lo = mac_bound_values(h, g, mac.alpha, SnrPoint(rho_pair[0])).as_list()
        hi = mac_bound_values(h, g, mac.alpha, SnrPoint(rho_pair[1])).as_list()
        return [
            SlopeReport(f"{label} {tag}", k, p, (b - a) / span, rho_pair, tolerance)
            for label, p, a, b in zip(labels, predicted, lo, hi)
        ]

    return _run_trials(trials, work, workers)


# ── Named Suites ──────────────────────────────────────────────

class Suite(str, Enum):
    MAC2 = "mac2"
    MAC3 = "mac3"
    OUTER_BOUNDS = "outer-bounds"
    SPLIT_BOUNDS = "split-bounds"
    MAC_REGION = "mac-region"
    ALL = "all"


# Older suite names still accepted on the command line.
SUITE_ALIASES: Dict[str, Suite] = {
    "lemma4": Suite.MAC2,
    "lemma5": Suite.MAC3,
    "theorem1": Suite.OUTER_BOUNDS,
}


def suite_names() -> List[str]:
    return [s.value for s in Suite] + list(SUITE_ALIASES)


def resolve_suite(name: str) -> Suite:
    if name in SUITE_ALIASES:
        return SUITE_ALIASES[name]
    try:
        return Suite(name)
    except ValueError:
        raise ValueError(f"Unknown suite '{name}'; choose from {suite_names()}")


def run_suite(name: str, cfg: Optional[AntennaConfig] = None, exp: Optional[ExponentProfile] = None,
              trials: int = DEFAULT_TRIALS, seed: int = 0, rho_pair: Tuple[float, float] = DEFAULT_RHO_PAIR,
              tolerance: float = DEFAULT_TOLERANCE, workers: int = 1) -> SuiteResult:
    suite = resolve_suite(name)
    cfg = cfg or EXAMPLE_CFG
    exp = exp or EXAMPLE_EXP
    common = dict(trials=trials, seed=seed, rho_pair=rho_pair, tolerance=tolerance, workers=workers)

    reports: List[SlopeReport] = []
    if suite in (Suite.MAC2, Suite.ALL):
        for u, t1, t2 in MAC2_CASES:
            reports += verify_f_approx(u, t1, t2, **common)
    if suite in (Suite.MAC3, Suite.ALL):
        for u, t1, t2, t3 in MAC3_CASES:
            reports += verify_g_approx(u, t1, t2, t3, **common)
    if suite in (Suite.OUTER_BOUNDS, Suite.ALL):
        reports += verify_theorem1(cfg, exp, **common)
    if suite in (Suite.SPLIT_BOUNDS, Suite.ALL):
        reports += verify_split_bounds(cfg, exp, **common)
    if suite in (Suite.MAC_REGION, Suite.ALL):
        for mac in MAC_REGION_CASES:
            reports += verify_mac(mac, **common)

    result = SuiteResult(suite=suite.value, reports=reports)
    verdicts = result.verdicts()
    failed = [v for v in verdicts if not v.passed]
    outliers = [v.label for v in verdicts if not v.within_cap]
    if outliers:
        logger.warning(f"Suite {suite.value}: trials beyond {OUTLIER_FACTOR}x tolerance in {outliers}")
    if failed:
        logger.error(f"Suite {suite.value}: {len(failed)}/{len(verdicts)} bounds failed, "
                     f"e.g. {failed[0].label} median error {failed[0].median_error:.4f}")
    else:
        logger.info(f"Suite {suite.value}: {len(verdicts)} bounds passed "
                    f"({result.within_share():.0%} of trials within tolerance)")
    return result
