"""Tests for ball volumes: profiles, Monte Carlo, brackets, growth fits."""

import math

import numpy as np
import pytest

from ektau.core import PointE, SpaceParams
from ektau.errors import UnsupportedSpaceError
from ektau.balls import (
    BallSpec,
    bounding_cylinder,
    comparison_cylinder_volume,
    in_ball,
    mc_volume,
    nil_ball_profile,
    sl2_volume_bracket,
    volume_growth_fit,
)
from ektau.geodesics import distance, nil_max_height

ORIGIN = PointE(0.0, 0.0, 0.0)


class TestBoundingCylinder:
    def test_euclidean(self):
        ball = BallSpec(SpaceParams(0.0, 0.0), ORIGIN, 2.0)
        assert bounding_cylinder(ball) == (2.0, 2.0)

    def test_nil_height_is_max_height(self):
        ball = BallSpec(SpaceParams(0.0, 1.0), ORIGIN, 4.0)
        disk_r, height = bounding_cylinder(ball)
        assert disk_r == 4.0
        assert height == nil_max_height(1.0, 4.0)

    def test_negative_curvature_disk_radius(self):
        sp = SpaceParams(-1.0, 0.0)
        ball = BallSpec(sp, ORIGIN, 3.0)
        disk_r, height = bounding_cylinder(ball)
        assert math.isclose(disk_r, 2.0 * math.tanh(1.5), rel_tol=1e-14)
        assert height == 3.0

    def test_bad_radius(self):
        with pytest.raises(ValueError):
            BallSpec(SpaceParams(0.0, 0.0), ORIGIN, 0.0)


class TestMembership:
    def test_euclidean_ball(self):
        ball = BallSpec(SpaceParams(0.0, 0.0), ORIGIN, 1.0)
        assert in_ball(ball, PointE(0.5, 0.5, 0.5))
        assert not in_ball(ball, PointE(0.9, 0.9, 0.0))

    def test_nil_membership_matches_distance(self):
        sp = SpaceParams(0.0, 1.0)
        ball = BallSpec(sp, ORIGIN, 2.0)
        rng = np.random.default_rng(11)
        for _ in range(40):
            p = PointE(*rng.uniform(-2.5, 2.5, size=3))
            d = distance(sp, ORIGIN, p)
            if abs(d - 2.0) < 1e-3:
                continue
            assert in_ball(ball, p) == (d < 2.0)

    def test_off_center_ball(self):
        sp = SpaceParams(0.0, 1.0)
        c = PointE(1.0, -0.5, 2.0)
        ball = BallSpec(sp, c, 1.0)
        assert in_ball(ball, PointE(c.x + 0.3, c.y, c.z))
        assert not in_ball(ball, ORIGIN)


class TestNilProfile:
    def test_axis_value_is_max_height(self):
        prof = nil_ball_profile(1.0, 4.0)
        assert math.isclose(prof.zmax[0], nil_max_height(1.0, 4.0), rel_tol=1e-12)

    def test_boundary_value_is_zero(self):
        prof = nil_ball_profile(1.0, 2.0)
        assert prof.zmax[-1] == 0.0
        assert prof.rho_grid[-1] == 2.0

    @pytest.mark.parametrize("tau,R", [(1.0, 2.0), (1.0, 4.0), (0.5, 1.0), (2.0, 3.0)])
    def test_profile_agrees_with_distance_solver(self, tau, R):
        """Random points near and inside the ball classify identically,
        outside a thin tolerance band around the boundary."""
        sp = SpaceParams(0.0, tau)
        prof = nil_ball_profile(tau, R)
        rng = np.random.default_rng(int(10 * tau) * 100 + int(R))
        height = nil_max_height(tau, R)
        band = 3e-3 * R
        checked = 0
        for _ in range(150):
            rho = rng.uniform(0.0, 1.1 * R)
            z = rng.uniform(0.0, 1.1 * height)
            d = distance(sp, ORIGIN, PointE(rho, 0.0, z))
            if abs(d - R) < band:
                continue
            got = bool(prof.contains(rho, z))
            assert got == (d < R), (rho, z, d)
            checked += 1
        assert checked > 100

    def test_contains_is_vectorized(self):
        prof = nil_ball_profile(1.0, 2.0)
        out = prof.contains(np.array([0.0, 1.0, 3.0]), np.array([0.5, 0.5, 0.0]))
        assert out.tolist() == [True, True, False]


class TestMcVolume:
    def test_euclidean_ball_volume(self):
        ball = BallSpec(SpaceParams(0.0, 0.0), ORIGIN, 1.0)
        est = mc_volume(ball, 400_000, seed=1)
        exact = 4.0 * math.pi / 3.0
        assert abs(est.value - exact) < 4.0 * est.std_error
        assert est.samples == 400_000
        assert est.bounding_volume > exact

    def test_product_ball_volume(self):
        # H^2(-1) x R ball of radius 2; exact value by 1-d quadrature of
        # the slice areas: V = int_{-R}^{R} 2 pi (cosh(sqrt(R^2-z^2)) - 1) dz
        R = 2.0
        z = np.linspace(-R, R, 20001)
        slices = 2.0 * math.pi * (np.cosh(np.sqrt(R * R - z * z)) - 1.0)
        exact = float(np.trapezoid(slices, z))
        ball = BallSpec(SpaceParams(-1.0, 0.0), ORIGIN, R)
        est = mc_volume(ball, 600_000, seed=5)
        assert abs(est.value - exact) < 4.0 * est.std_error

    def test_nil_volume_between_comparison_cylinders(self):
        # for large radii the ball volume is of the order tau R^4 and below
        # the volume of the bounding cylinder
        tau, R = 1.0, 6.0
        ball = BallSpec(SpaceParams(0.0, tau), ORIGIN, R)
        est = mc_volume(ball, 400_000, seed=2)
        assert est.value < est.bounding_volume
        assert est.value > 0.05 * comparison_cylinder_volume(tau, R)
        assert est.value < comparison_cylinder_volume(tau, R)

    def test_deterministic_and_chunk_layout_independent(self):
        ball = BallSpec(SpaceParams(0.0, 1.0), ORIGIN, 2.0)
        a = mc_volume(ball, 150_000, seed=9)
        b = mc_volume(ball, 150_000, seed=9)
        assert a == b
        c = mc_volume(ball, 150_000, seed=10)
        assert c.value != a.value

    def test_sample_floor(self):
        ball = BallSpec(SpaceParams(0.0, 0.0), ORIGIN, 1.0)
        with pytest.raises(ValueError):
            mc_volume(ball, 10, seed=0)

    def test_sl2_rejected(self):
        ball = BallSpec(SpaceParams(-1.0, 1.0), ORIGIN, 1.0)
        with pytest.raises(UnsupportedSpaceError):
            mc_volume(ball, 10_000, seed=0)


class TestSl2Bracket:
    def test_bracket_orders(self):
        for R in (0.5, 1.0, 2.0, 4.0):
            lo, hi = sl2_volume_bracket(BallSpec(SpaceParams(-1.0, 1.0), ORIGIN, R))
            assert 0.0 < lo < hi

    def test_lower_bound_contains_product_core(self):
        # the lower-bound region {d_base + |z| <= R} has the closed form
        # 4 pi (sinh R - R) for kappa = -1; spot-check the formula
        R = 2.0
        lo, _ = sl2_volume_bracket(BallSpec(SpaceParams(-1.0, 0.5), ORIGIN, R))
        assert math.isclose(lo, 4.0 * math.pi * (math.sinh(R) - R), rel_tol=1e-12)

    def test_non_sl2_rejected(self):
        with pytest.raises(UnsupportedSpaceError):
            sl2_volume_bracket(BallSpec(SpaceParams(0.0, 1.0), ORIGIN, 1.0))


class TestGrowthFit:
    def test_exact_power_data(self):
        radii = np.array([1.0, 2.0, 3.0, 4.0, 6.0, 8.0])
        fit = volume_growth_fit(radii, 2.5 * radii**4)
        assert math.isclose(fit.power_exponent, 4.0, abs_tol=1e-12)
        assert math.isclose(fit.power_coeff, 2.5, rel_tol=1e-12)
        assert fit.preferred == "power"
        assert fit.power_residual < 1e-12

    def test_exact_exponential_data(self):
        radii = np.array([1.0, 2.0, 3.0, 4.0, 5.0, 6.0])
        fit = volume_growth_fit(radii, 0.7 * np.exp(1.3 * radii))
        assert math.isclose(fit.exp_rate, 1.3, abs_tol=1e-12)
        assert math.isclose(fit.exp_coeff, 0.7, rel_tol=1e-10)
        assert fit.preferred == "exponential"

    def test_input_validation(self):
        with pytest.raises(ValueError):
            volume_growth_fit([1, 2, 3], [1, 2, 3])
        with pytest.raises(ValueError):
            volume_growth_fit([1, 2, 3, 4, 5, 4.5], np.ones(6))
        with pytest.raises(ValueError):
            volume_growth_fit([1, 2, 3, 4, 5, 6], [1, 2, 3, 4, 5, -1])
