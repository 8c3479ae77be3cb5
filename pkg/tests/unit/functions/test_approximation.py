"""Tests for mehlerlab.functions.approximation."""

from __future__ import annotations

import numpy as np
import pytest

from mehlerlab.core.constants import APPROX_OVERSAMPLE
from mehlerlab.core.exceptions import ApproximationError
from mehlerlab.functions.approximation import (
    approximate,
    cutoff_profile,
    grid_size,
    mollify_periodize,
    smooth_step,
    uniform_bound,
)
from mehlerlab.functions.bump import constant_function, make_bump


class TestCutoff:
    def test_smooth_step_limits(self) -> None:
        np.testing.assert_array_equal(smooth_step(np.array([-1.0, 0.0, 1.0, 2.0])), [0.0, 0.0, 1.0, 1.0])
        assert smooth_step(np.array(0.5)) == pytest.approx(0.5)

    def test_profile_plateau_and_support(self) -> None:
        np.testing.assert_array_equal(cutoff_profile(np.array([0.0, 0.5, 1.0, 1.5, 3.0])), [1, 1, 1, 0, 0])

    def test_profile_is_monotone(self) -> None:
        r = np.linspace(1.0, 1.5, 101)
        assert np.all(np.diff(cutoff_profile(r)) <= 0.0)


class TestGridSize:
    def test_power_of_two(self) -> None:
        size = grid_size(4, 32, 1)
        assert size & (size - 1) == 0
        assert 4.0 * 4 / size <= 1.0 / (4 * 4)

    @pytest.mark.parametrize("n", [1, 2, 4, 8])
    def test_spacing_follows_mollifier_scale(self, n: int) -> None:
        size = grid_size(n, 1, 1)
        assert 4.0 * n / size <= 1.0 / (n * APPROX_OVERSAMPLE)
        assert 4.0 * n / size > 0.5 / (n * APPROX_OVERSAMPLE)

    def test_default_schedule_fits_in_two_dimensions(self) -> None:
        assert grid_size(8, 128, 2) == 1024

    def test_resolves_frequencies(self) -> None:
        assert grid_size(1, 1000, 1) >= 4000

    def test_too_large(self) -> None:
        with pytest.raises(ApproximationError):
            grid_size(64, 32, 3)


class TestApproximate:
    def test_constant_preserved_before_truncation(self) -> None:
        approx = approximate(constant_function(2.0, 1), 4, 32)
        inner = np.abs(approx.axis) <= 4.0
        np.testing.assert_allclose(approx.periodized[inner], 2.0, atol=1e-12)

    def test_constant_inside_half_cutoff(self) -> None:
        p = mollify_periodize(constant_function(2.0, 1), 8, 128)
        xs = np.linspace(-4.0, 4.0, 17)[:, None]
        np.testing.assert_allclose(np.real(p.value(xs)), 2.0, atol=1e-6)

    def test_period_is_four_n(self) -> None:
        p = mollify_periodize(make_bump([0.3], 1.0), 2, 16)
        xs = np.random.default_rng(3).uniform(-3.0, 3.0, size=(25, 1))
        np.testing.assert_allclose(p.value(xs + 8.0), p.value(xs), rtol=0.0, atol=1e-12)

    def test_period_along_each_axis_in_two_dimensions(self) -> None:
        p = approximate(make_bump([0.0, 0.0], 1.0), 1, 8).polynomial
        xs = np.random.default_rng(4).uniform(-1.5, 1.5, size=(20, 2))
        for j in range(2):
            shift = np.zeros(2)
            shift[j] = 4.0
            np.testing.assert_allclose(p.value(xs + shift), p.value(xs), rtol=0.0, atol=1e-12)

    def test_grid_error_shrinks_as_m_doubles(self) -> None:
        f = make_bump([0.0], 1.0)
        errors = [approximate(f, 4, m).truncation_error() for m in (8, 16, 32, 64)]
        assert all(later < earlier for earlier, later in zip(errors, errors[1:]))

    def test_pointwise_convergence_along_schedule(self) -> None:
        f = make_bump([0.0], 6.0)
        points = np.array([[-1.5], [-0.6], [0.0], [0.3], [1.1]])
        exact = f.value(points)
        errors = [
            float(np.max(np.abs(np.real(mollify_periodize(f, n, m).value(points)) - exact)))
            for n, m in ((4, 32), (8, 128))
        ]
        assert errors[1] < errors[0]
        assert errors[1] <= 1e-3

    def test_uniform_bound(self) -> None:
        f = make_bump([0.0], 1.0)
        approx = approximate(f, 4, 32)
        assert approx.bound == pytest.approx(uniform_bound(f, 4))
        assert approx.norm_sum() <= 1.05 * approx.bound

    def test_polynomial_matches_grid_values(self) -> None:
        approx = approximate(make_bump([0.0], 1.0), 2, 16)
        idx = np.arange(0, approx.axis.size, 37)
        values = np.real(approx.polynomial.value(approx.axis[idx][:, None]))
        np.testing.assert_allclose(values, approx.values[idx], atol=1e-10)

    def test_real_polynomial(self) -> None:
        assert mollify_periodize(make_bump([0.0], 1.0), 2, 8).is_real

    def test_two_dimensional(self) -> None:
        approx = approximate(make_bump([0.0, 0.0], 1.0), 1, 8)
        assert approx.dim == 2
        assert approx.values.shape == (approx.axis.size, approx.axis.size)

    def test_invalid_orders(self) -> None:
        with pytest.raises(ApproximationError):
            approximate(make_bump([0.0], 1.0), 0, 8)

    def test_dimension_limit(self) -> None:
        with pytest.raises(ApproximationError):
            approximate(constant_function(1.0, 4), 1, 1)
