import itertools
import random
from fractions import Fraction as F

import pytest

from core.gdof import AntennaConfig, ExponentProfile, InvalidAntennaConfigError, gdof_region, symmetric_gdof
from core.polytope import region_equal
from core.specializations import (
    MacConfig,
    default_alpha_grid,
    dof_region,
    dof_region_raw,
    dof_sum_bound,
    insight_curves,
    mac_bounds,
    mac_corner_points,
    mac_gdof_region,
    siso_region,
    symmetric_closed_form,
    tin_gdof,
    tin_gdof_region,
)

ONES = ExponentProfile(1, 1, 1, 1)


# ── DoF ───────────────────────────────────────────────────────

def test_dof_specialization_all_small_configs():
    for counts in itertools.product(range(1, 6), repeat=4):
        cfg = AntennaConfig(*counts)
        full = gdof_region(cfg, ONES)
        assert region_equal(full, dof_region_raw(cfg)), counts
        assert region_equal(full, dof_region(cfg)), counts


@pytest.mark.parametrize("counts, expected", [
    ((3, 3, 2, 2), 3),
    ((1, 1, 1, 1), 1),
    ((4, 1, 1, 4), 1),
    ((2, 3, 4, 1), 2),
])
def test_dof_sum_bound(counts, expected):
    assert dof_sum_bound(AntennaConfig(*counts)) == expected


# ── SISO ──────────────────────────────────────────────────────

def test_siso_matches_engine():
    rng = random.Random(11)
    grid = [F(k, 4) for k in range(9)]
    cfg = AntennaConfig(1, 1, 1, 1)
    for _ in range(100):
        exp = ExponentProfile(1, rng.choice(grid), rng.choice(grid), rng.choice(grid))
        assert region_equal(siso_region(exp), gdof_region(cfg, exp)), exp


# ── MAC ───────────────────────────────────────────────────────

def test_mac_receive_rich_is_box():
    region = mac_gdof_region(MacConfig(2, 2, 5, F(1, 2)))
    assert region.vertices == ((0, 0), (2, 0), (2, 1), (0, 1))


@pytest.mark.parametrize("alpha, corners", [
    (F(1, 2), [(2, F(1, 2)), (F(3, 2), 1)]),
    (F(1), [(2, 1), (1, 2)]),
    (F(2), [(2, 3), (1, 4)]),
])
def test_mac_corner_points(alpha, corners):
    mac = MacConfig(2, 2, 3, alpha)
    assert mac_corner_points(mac) == corners
    vertices = mac_gdof_region(mac).vertices
    assert all(c in vertices for c in corners)


def test_mac_corner_points_out_of_range():
    with pytest.raises(ValueError):
        mac_corner_points(MacConfig(2, 2, 5, F(1, 2)))


def test_mac_bounds():
    assert mac_bounds(MacConfig(2, 2, 3, F(1, 2))) == [2, 1, F(5, 2)]


@pytest.mark.parametrize("kwargs", [dict(m1=0, m2=1, n=1, alpha=1), dict(m1=1, m2=1, n=1, alpha=-1)])
def test_mac_config_rejects(kwargs):
    with pytest.raises(ValueError):
        MacConfig(**kwargs)


def test_mac_config_antenna_error_type():
    with pytest.raises(InvalidAntennaConfigError):
        MacConfig(1, 0, 1, 1)


# ── TIN ───────────────────────────────────────────────────────

def test_tin_suboptimal_instance():
    tin = tin_gdof(3, 2, F(2, 5))
    fundamental = symmetric_gdof(AntennaConfig(3, 2, 3, 2), ExponentProfile.symmetric(F(2, 5)))
    assert tin == F(6, 5)
    assert fundamental == symmetric_closed_form(3, 2, F(2, 5)) == F(8, 5)
    assert tin < fundamental


def test_tin_receive_rich():
    assert tin_gdof(1, 2, F(2, 5)) == 1


def test_tin_region_is_square():
    assert tin_gdof_region(3, 2, "2/5").vertices == (
        (0, 0), (F(6, 5), 0), (F(6, 5), F(6, 5)), (0, F(6, 5)),
    )


def test_tin_rejects_negative_alpha():
    with pytest.raises(ValueError):
        tin_gdof(2, 2, -1)


# ── Curves ────────────────────────────────────────────────────

def test_default_alpha_grid():
    assert default_alpha_grid(1, F(1, 4)) == [0, F(1, 4), F(1, 2), F(3, 4), 1]
    with pytest.raises(ValueError):
        default_alpha_grid(1, 0)


def test_insight_v_curve():
    curve = insight_curves("v-curve-1121", {"alphas": [0, 1, 2, 3]})
    assert curve.values() == [1, F(1, 2), 1, 1]


def test_insight_w_curve_matches_engine():
    curve = insight_curves("w-curve-MgeN", {"m": 3, "n": 2, "alphas": [0, F(1, 2), 1, 2]})
    cfg = AntennaConfig(3, 2, 3, 2)
    for alpha, value in curve.points:
        assert value == symmetric_gdof(cfg, ExponentProfile.symmetric(alpha))


def test_insight_tin_overlay_default_grid():
    curve = insight_curves("tin-overlay", {"m": 3, "n": 2})
    assert curve.alphas()[0] == 0 and curve.alphas()[-1] == F(1, 2)
    assert curve(F(2, 5)) == F(6, 5)


@pytest.mark.parametrize("name, params", [
    ("no-such-curve", {}),
    ("w-curve-MgeN", {"m": 2, "n": 3}),
    ("tin-overlay", {}),
])
def test_insight_rejects(name, params):
    with pytest.raises(ValueError):
        insight_curves(name, params)
