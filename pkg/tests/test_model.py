"""Potential, kink profiles, and boosts: closed-form identities and bounds."""
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from phi6kinks.model import (
    SQRT2,
    KinkSpec,
    Orientation,
    antikink_derivative,
    antikink_value,
    boosted_kink_field,
    eval_potential,
    eval_potential_derivative,
    kink_derivative,
    kink_value,
)

FINITE = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)


class TestPotential:
    def test_vacua(self):
        for v in (0.0, 1.0, -1.0):
            assert eval_potential(v) == 0.0
            assert eval_potential_derivative(1, v) == pytest.approx(0.0, abs=1e-15)

    def test_direct_substitution(self):
        assert eval_potential(1.0 / SQRT2) == pytest.approx(0.125, abs=1e-15)

    @given(FINITE)
    def test_nonnegative(self, phi):
        assert eval_potential(phi) >= 0.0

    def test_derivative_values(self):
        assert eval_potential_derivative(1, 1.0) == pytest.approx(0.0, abs=1e-14)
        assert eval_potential_derivative(2, 0.0) == 2.0
        assert eval_potential_derivative(4, 0.0) == -48.0
        assert eval_potential_derivative(6, 0.5) == 720.0
        assert eval_potential_derivative(6, -2.0) == 720.0

    def test_order_out_of_range(self):
        with pytest.raises(ValueError):
            eval_potential_derivative(0, 0.5)
        with pytest.raises(ValueError):
            eval_potential_derivative(7, 0.5)

    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6])
    def test_derivative_consistent_with_finite_differences(self, k):
        lower = eval_potential if k == 1 else (
            lambda p: eval_potential_derivative(k - 1, p)
        )
        h = 1e-5
        for phi in np.linspace(-1.5, 1.5, 13):
            fd = (lower(phi + h) - lower(phi - h)) / (2 * h)
            val = eval_potential_derivative(k, phi)
            assert val == pytest.approx(fd, rel=1e-6, abs=1e-6)

    def test_vectorized(self):
        phi = np.array([0.0, 0.5, 1.0])
        np.testing.assert_allclose(
            eval_potential(phi), [eval_potential(p) for p in phi]
        )


class TestKinkProfile:
    def test_center_value(self):
        assert kink_value(0.0) == pytest.approx(1.0 / SQRT2, abs=1e-15)

    def test_limits(self):
        assert kink_value(50.0) == pytest.approx(1.0, abs=1e-15)
        assert kink_value(-50.0) == pytest.approx(0.0, abs=1e-15)

    def test_far_tail_closed_form(self):
        expected = math.exp(-10 * SQRT2) / math.sqrt(1 + math.exp(-20 * SQRT2))
        assert kink_value(-10.0) == pytest.approx(expected, rel=1e-14)

    def test_no_overflow_far_out(self):
        assert kink_value(400.0) == 1.0
        assert 0.0 <= kink_value(-400.0) < 1e-200
        assert np.isfinite(kink_derivative(1, np.array([-500.0, 500.0]))).all()

    def test_monotone(self):
        x = np.linspace(-20, 20, 4001)
        assert np.all(np.diff(kink_value(x)) >= 0)
        core = np.linspace(-15, 5, 2001)  # strictly rising where resolvable
        assert np.all(np.diff(kink_value(core)) > 0)

    def test_slope_at_center(self):
        assert kink_derivative(1, 0.0) == pytest.approx(0.5, abs=1e-14)

    def test_curvature_at_center(self):
        assert kink_derivative(2, 0.0) == pytest.approx(-(2.0 ** -1.5), abs=1e-14)

    def test_slope_matches_finite_difference(self):
        h = 1e-4
        for x in np.linspace(-8, 8, 33):
            fd = (kink_value(x + h) - kink_value(x - h)) / (2 * h)
            assert kink_derivative(1, x) == pytest.approx(fd, abs=1e-8)

    def test_curvature_matches_finite_difference_of_slope(self):
        h = 1e-4
        for x in np.linspace(-8, 8, 33):
            fd = (kink_derivative(1, x + h) - kink_derivative(1, x - h)) / (2 * h)
            assert kink_derivative(2, x) == pytest.approx(fd, abs=1e-8)

    def test_static_profile_solves_force_balance(self):
        x = np.linspace(-30, 30, 1201)
        lhs = kink_derivative(2, x)
        rhs = eval_potential_derivative(1, kink_value(x))
        assert np.max(np.abs(lhs - rhs)) < 1e-12

    def test_first_integral_identity(self):
        x = np.linspace(-30, 30, 1201)
        h = kink_value(x)
        assert np.max(np.abs(kink_derivative(1, x) - SQRT2 * h * (1 - h * h))) < 1e-12

    def test_order_out_of_range(self):
        with pytest.raises(ValueError):
            kink_derivative(3, 0.0)

    @given(st.floats(min_value=-30.0, max_value=30.0))
    def test_decay_bounds(self, x):
        # |H(x)| <= e^{-sqrt2 (-x)+} and |H'(x)| <= sqrt2 e^{-sqrt2 (-x)+}
        bound = math.exp(-SQRT2 * max(-x, 0.0))
        assert abs(kink_value(x)) <= bound + 1e-15
        assert abs(kink_derivative(1, x)) <= SQRT2 * bound + 1e-15
        # reflected versions for the antikink
        bound_r = math.exp(-SQRT2 * max(x, 0.0))
        assert abs(antikink_value(x)) <= bound_r + 1e-15
        assert abs(antikink_derivative(1, x)) <= SQRT2 * bound_r + 1e-15


class TestAntikink:
    def test_reflection(self):
        x = np.linspace(-15, 15, 301)
        np.testing.assert_allclose(antikink_value(x), -kink_value(-x), rtol=0, atol=0)

    def test_center_and_limits(self):
        assert antikink_value(0.0) == pytest.approx(-1.0 / SQRT2, abs=1e-15)
        assert antikink_value(-50.0) == pytest.approx(-1.0, abs=1e-15)
        assert antikink_value(50.0) == pytest.approx(0.0, abs=1e-15)

    def test_slope_positive(self):
        x = np.linspace(-10, 10, 101)
        assert np.all(antikink_derivative(1, x) > 0)

    def test_second_derivative_matches_fd(self):
        h = 1e-4
        for x in (-2.0, 0.0, 1.5):
            fd = (antikink_derivative(1, x + h) - antikink_derivative(1, x - h)) / (2 * h)
            assert antikink_derivative(2, x) == pytest.approx(fd, abs=1e-8)


class TestBoost:
    def test_zero_velocity_is_static(self):
        spec = KinkSpec(Orientation.KINK, center=1.0, boost_velocity=0.0)
        x = np.linspace(-5, 5, 11)
        val, dval = boosted_kink_field(spec, x, 3.7)
        np.testing.assert_allclose(val, kink_value(x - 1.0))
        np.testing.assert_allclose(dval, 0.0)

    def test_comoving_point(self):
        v = 0.1
        spec = KinkSpec(Orientation.KINK, center=2.0, boost_velocity=v)
        t = 7.0
        val, dval = boosted_kink_field(spec, 2.0 + v * t, t)
        assert val == pytest.approx(kink_value(0.0), abs=1e-14)
        assert dval == pytest.approx(-v * kink_derivative(1, 0.0) / math.sqrt(1 - v * v),
                                     abs=1e-14)

    def test_time_derivative_matches_fd(self):
        spec = KinkSpec(Orientation.ANTIKINK, center=-1.0, boost_velocity=0.3)
        h = 1e-5
        for x in (-3.0, -1.0, 0.5):
            vp, _ = boosted_kink_field(spec, x, 1.0 + h)
            vm, _ = boosted_kink_field(spec, x, 1.0 - h)
            _, dval = boosted_kink_field(spec, x, 1.0)
            assert dval == pytest.approx((vp - vm) / (2 * h), abs=1e-8)

    def test_traveling_wave_property(self):
        v = 0.25
        spec = KinkSpec(Orientation.KINK, center=0.0, boost_velocity=v)
        delta = 1.3
        v1, _ = boosted_kink_field(spec, 0.7, 2.0)
        v2, _ = boosted_kink_field(spec, 0.7 + v * delta, 2.0 + delta)
        assert v1 == pytest.approx(v2, abs=1e-12)

    def test_rejects_superluminal(self):
        with pytest.raises(ValueError):
            KinkSpec(Orientation.KINK, boost_velocity=1.0)
