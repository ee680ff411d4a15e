import math
from fractions import Fraction as F

import numpy as np
import pytest

from core.gdof import AntennaConfig, ExponentProfile
from core.hk_scheme import (
    ChannelInstance,
    SnrPoint,
    achievable_bound_values,
    beam_decomposition,
    complex_gaussian,
    default_gaps,
    default_taus,
    hk_covariances,
    log2det_eye_plus,
    mac_bound_values,
    outer_bound_values,
    private_covariance,
    sample_channel,
    sample_mac_channel,
    split_bound_values,
    tin_rates,
)
from core.specializations import MacConfig


def test_complex_gaussian_shape_and_scale():
    rng = np.random.default_rng(0)
    h = complex_gaussian(rng, 200, 50)
    assert h.shape == (200, 50)
    assert np.iscomplexobj(h)
    assert np.mean(np.abs(h) ** 2) == pytest.approx(1.0, abs=0.05)


def test_log2det_eye_plus():
    assert log2det_eye_plus(np.zeros((3, 3))) == 0.0
    assert log2det_eye_plus(np.diag([1.0, 3.0])) == pytest.approx(3.0)


def test_snr_point():
    assert SnrPoint(4.0).power(F(1, 2)) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        SnrPoint(1.0)


def test_unit_channel_direct_bound():
    one = np.ones((1, 1), dtype=complex)
    ch = ChannelInstance(h11=one, h12=one, h21=one, h22=one)
    values = outer_bound_values(ch, ExponentProfile(1, 1, 1, 1), SnrPoint(3.0))
    assert values.i_b1 == pytest.approx(2.0)
    assert values.i_b2 == pytest.approx(2.0)


def test_channel_shape_check():
    with pytest.raises(ValueError):
        ChannelInstance(h11=np.ones((2, 2)), h12=np.ones((1, 2)), h21=np.ones((2, 3)), h22=np.ones((2, 3)))


def test_sample_channel_deterministic():
    cfg = AntennaConfig(3, 3, 2, 2)
    a, b = sample_channel(cfg, 5), sample_channel(cfg, 5)
    assert a.cfg == cfg
    for i, j in ((1, 1), (1, 2), (2, 1), (2, 2)):
        np.testing.assert_array_equal(a.link(i, j), b.link(i, j))
    assert not np.allclose(a.h11, sample_channel(cfg, 6).h11)


def test_covariance_invariants(example1):
    cfg, exp = example1
    snr = SnrPoint(1e6)
    for seed in range(100):
        ch = sample_channel(cfg, seed)
        for user, pair in zip((1, 2), hk_covariances(ch, exp, snr)):
            j = 2 if user == 1 else 1
            m = cfg.tx(user)
            assert np.trace(pair.k_u + pair.k_w).real == pytest.approx(1.0, abs=1e-12)
            h = ch.link(user, j)
            received = snr.power(exp.a(user, j)) * h @ pair.k_u @ h.conj().T
            assert np.linalg.eigvalsh(received).max() <= 1.0 / m + 1e-12
            assert np.linalg.eigvalsh(pair.k_w).min() >= -1e-12


def test_null_space_beams(example1):
    cfg, exp = example1
    snr = SnrPoint(1e6)
    for seed in range(100):
        ch = sample_channel(cfg, seed)
        beams = beam_decomposition(ch, exp, snr, user=1)
        assert beams.null_directions().shape == (3, 1)
        assert np.linalg.norm(ch.h12 @ beams.null_directions()) <= 1e-9


def test_beam_decomposition_matches_private_covariance(example1):
    cfg, exp = example1
    snr = SnrPoint(1e6)
    ch = sample_channel(cfg, 3)
    beams = beam_decomposition(ch, exp, snr, user=2)
    expected = private_covariance(ch.h21, cfg.m2, snr.power(exp.a21))
    np.testing.assert_allclose(beams.private_covariance(), expected, atol=1e-12)
    np.testing.assert_allclose(beams.private_covariance() + beams.public_covariance(),
                               np.eye(cfg.m2) / cfg.m2, atol=1e-12)
    with pytest.raises(ValueError):
        beam_decomposition(ch, exp, snr, user=3)


def test_default_gap_constants():
    cfg = AntennaConfig(3, 3, 2, 2)
    log3 = math.log2(3)
    assert default_gaps(cfg) == pytest.approx((3 * log3, 2 * log3))
    assert default_taus(cfg) == pytest.approx((2 * log3, 3 * log3))
    assert default_gaps(cfg, n1=0.5) == pytest.approx((0.5, 2 * log3))


def test_achievable_below_outer(example1):
    cfg, exp = example1
    ch = sample_channel(cfg, 1)
    snr = SnrPoint(1e6)
    outer = outer_bound_values(ch, exp, snr).as_list()
    achievable = achievable_bound_values(ch, exp, snr).as_list()
    assert all(0.0 <= a <= o for a, o in zip(achievable, outer))
    assert achievable_bound_values(ch, exp, snr, gaps=(0.0, 0.0)).as_list() == pytest.approx(outer)
    with pytest.raises(ValueError):
        achievable_bound_values(ch, exp, snr, gaps=(-1.0, 0.0))


def test_split_bound_values(example1):
    cfg, exp = example1
    ch = sample_channel(cfg, 2)
    values = split_bound_values(ch, exp, SnrPoint(1e6))
    assert len(values.values) == 14
    assert all(v >= 0.0 for v in values.values)
    untaxed = split_bound_values(ch, exp, SnrPoint(1e6), taus=(0.0, 0.0)).values
    assert all(v <= u for v, u in zip(values.values, untaxed))


def test_tin_rates_symmetric_only(example1):
    cfg, _ = example1
    with pytest.raises(ValueError):
        tin_rates(sample_channel(cfg, 0), F(2, 5), SnrPoint(1e6))
    r1, r2 = tin_rates(sample_channel(AntennaConfig(3, 2, 3, 2), 0), F(2, 5), SnrPoint(1e6))
    assert r1 > 0 and r2 > 0


def test_mac_bound_values():
    mac = MacConfig(2, 2, 3, F(1, 2))
    h, g = sample_mac_channel(mac, 0)
    assert h.shape == (3, 2) and g.shape == (3, 2)
    outer = mac_bound_values(h, g, mac.alpha, SnrPoint(1e6))
    inner = mac_bound_values(h, g, mac.alpha, SnrPoint(1e6), achievable=True)
    assert inner.achievable and not outer.achievable
    assert all(i <= o for i, o in zip(inner.as_list(), outer.as_list()))
    assert outer.r_sum <= outer.r1 + outer.r2 + 1e-9


def unit_channel() -> ChannelInstance:
    one = np.ones((1, 1), dtype=complex)
    return ChannelInstance(h11=one, h12=one, h21=one, h22=one)


def test_scalar_covariance_split():
    # ρ^α12 = 3 with a unit cross link
    pair1, _ = hk_covariances(unit_channel(), ExponentProfile(1, 1, 1, 1), SnrPoint(3.0))
    assert pair1.k_u[0, 0].real == pytest.approx(0.25, abs=1e-12)
    assert pair1.k_w[0, 0].real == pytest.approx(0.75, abs=1e-12)


def test_scalar_tin_rate():
    r1, r2 = tin_rates(unit_channel(), 0, SnrPoint(3.0))
    assert r1 == pytest.approx(math.log2(1 + 3 / 2))
    assert r2 == pytest.approx(r1)


def test_tin_rate_slope():
    cfg = AntennaConfig(3, 2, 3, 2)
    lo, hi = SnrPoint(1e6), SnrPoint(1e9)
    slopes = []
    for seed in range(5):
        ch = sample_channel(cfg, seed)
        gained = tin_rates(ch, F(2, 5), hi)[0] - tin_rates(ch, F(2, 5), lo)[0]
        slopes.append(gained / (math.log2(hi.rho) - math.log2(lo.rho)))
    assert float(np.median(slopes)) == pytest.approx(1.2, abs=0.05)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_outer_bounds_nondecreasing_in_rho(example1, seed):
    cfg, exp = example1
    ch = sample_channel(cfg, seed)
    series = [outer_bound_values(ch, exp, SnrPoint(rho)).as_list() for rho in (2.0, 10.0, 1e3, 1e6, 1e9)]
    for before, after in zip(series, series[1:]):
        assert all(b <= a + 1e-9 for b, a in zip(before, after)), (before, after)
