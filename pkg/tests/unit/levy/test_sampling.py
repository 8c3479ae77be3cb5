"""Tests for mehlerlab.levy.sampling."""

from __future__ import annotations

import numpy as np
import pytest

from mehlerlab.levy.measures import CompoundPoisson, IsotropicStableRadial, NoJumps, PointMassLaw
from mehlerlab.levy.sampling import sample_increment, small_jump_bias_bound, uses_gaussian_substitution
from mehlerlab.levy.triplet import LevyTriplet


class TestSampleIncrement:
    def test_pure_drift(self) -> None:
        triplet = LevyTriplet(np.zeros((2, 2)), np.array([1.0, 0.0]), NoJumps(2))
        np.testing.assert_array_equal(sample_increment(triplet, 0.5, rng=np.random.default_rng(0)), [0.5, 0.0])

    def test_batch_shape(self) -> None:
        triplet = LevyTriplet.gaussian(np.eye(3))
        out = sample_increment(triplet, 0.1, rng=np.random.default_rng(0), size=7)
        assert out.shape == (7, 3)

    def test_gaussian_moments(self) -> None:
        triplet = LevyTriplet.gaussian([[2.0]], [0.5])
        out = sample_increment(triplet, 0.5, rng=np.random.default_rng(3), size=40000)
        assert out.mean() == pytest.approx(0.25, abs=0.03)
        assert out.var() == pytest.approx(1.0, rel=0.05)

    def test_point_mass_jumps_are_exact(self) -> None:
        triplet = LevyTriplet(np.zeros((1, 1)), np.zeros(1), CompoundPoisson(3.0, PointMassLaw((2.0,))))
        out = sample_increment(triplet, 1.0, rng=np.random.default_rng(5), size=2000)
        assert np.allclose(out / 2.0, np.round(out / 2.0))
        assert out.mean() == pytest.approx(6.0, rel=0.1)

    def test_same_stream_same_draws(self) -> None:
        triplet = LevyTriplet(np.zeros((1, 1)), np.zeros(1), IsotropicStableRadial(1.5, 1.0, 1))
        a = sample_increment(triplet, 0.1, rng=np.random.default_rng(11), size=50)
        b = sample_increment(triplet, 0.1, rng=np.random.default_rng(11), size=50)
        np.testing.assert_array_equal(a, b)

    def test_invalid_arguments(self) -> None:
        triplet = LevyTriplet.gaussian([[1.0]])
        with pytest.raises(ValueError):
            sample_increment(triplet, 0.0)
        with pytest.raises(ValueError):
            sample_increment(triplet, 0.1, eps=2.0)


class TestSmallJumps:
    def test_substitution_rule(self) -> None:
        heavy = IsotropicStableRadial(1.9, 1.0, 1)
        light = IsotropicStableRadial(0.3, 0.1, 1)
        assert uses_gaussian_substitution(heavy, 0.01)
        assert not uses_gaussian_substitution(light, 0.5)
        assert not uses_gaussian_substitution(NoJumps(1), 0.01)

    def test_bias_bound_zero_without_jumps(self) -> None:
        assert small_jump_bias_bound(LevyTriplet.gaussian(np.eye(2)), 0.01, 1.0, np.ones(2)) == 0.0

    def test_bias_bound_shrinks_with_cut(self) -> None:
        triplet = LevyTriplet(np.zeros((1, 1)), np.zeros(1), IsotropicStableRadial(1.0, 1.0, 1))
        u = np.array([1.0])
        assert small_jump_bias_bound(triplet, 0.01, 1.0, u) < small_jump_bias_bound(triplet, 0.1, 1.0, u)
