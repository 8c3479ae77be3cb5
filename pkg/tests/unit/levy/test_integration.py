"""Tests for mehlerlab.levy.integration."""

from __future__ import annotations

import math

import numpy as np
import pytest
from scipy import integrate

from mehlerlab.levy.integration import check_levy_measure, levy_integral
from mehlerlab.levy.measures import FiniteAtomic, IsotropicStableRadial, TemperedStable


def _one_wedge_sq(y: np.ndarray) -> np.ndarray:
    return np.minimum(1.0, np.sum(y**2, axis=1))


class TestLevyIntegral:
    def test_atomic_is_weighted_sum(self) -> None:
        nu = FiniteAtomic((1.0, 0.5), ((2.0, 0.0), (0.0, 0.3)))
        value, error = levy_integral(nu, lambda y: np.sum(y**2, axis=1), 0.1)
        assert float(value) == pytest.approx(1.0 * 4.0 + 0.5 * 0.09)
        assert error == 0.0

    def test_zero_integrand(self) -> None:
        value, error = levy_integral(TemperedStable(0.5, 1.0, 1.0, 1.0), lambda y: np.zeros(len(y)), 0.1)
        assert float(value) == 0.0
        assert error <= 1e-15

    def test_cauchy_measure_closed_form(self) -> None:
        nu = IsotropicStableRadial(1.0, 1.0, 1)
        value, _ = levy_integral(nu, _one_wedge_sq, 0.1)
        assert float(value) == pytest.approx(4.0, rel=1e-8)

    def test_hessian_subtraction_is_exact(self) -> None:
        nu = TemperedStable(1.5, 1.0, 1.0, 0.0)
        g = lambda y: 1.0 - np.cos(y[:, 0])  # noqa: E731
        plain, _ = levy_integral(nu, g, 0.1, g_bound=2.0)
        subtracted, _ = levy_integral(nu, g, 0.1, hessian=np.array([[1.0]]), g_bound=2.0)
        assert float(subtracted) == pytest.approx(float(plain), rel=1e-7)

    def test_tail_constant(self) -> None:
        nu = TemperedStable(0.5, 1.0, 0.0, 1.0)
        g = lambda y: np.where(np.abs(y[:, 0]) > 2.0, 1.0, np.minimum(1.0, y[:, 0] ** 2))  # noqa: E731
        value, _ = levy_integral(nu, g, 0.1, tail_constant=(2.0, 1.0), breaks=(2.0,))
        reference, _ = levy_integral(nu, g, 0.1, breaks=(2.0,))
        assert float(value) == pytest.approx(float(reference), rel=1e-8)

    def test_split_radius_checked(self) -> None:
        with pytest.raises(ValueError):
            levy_integral(TemperedStable(0.5), _one_wedge_sq, 1.5)


class TestCheckLevyMeasure:
    def test_single_atom(self) -> None:
        report = check_levy_measure(FiniteAtomic((1.0,), ((2.0, 0.0),)))
        assert report.small_jump_mass == pytest.approx(1.0)
        assert report.tail_first_moment == pytest.approx(2.0)
        assert report.has_first_moment

    def test_stable_without_first_moment(self) -> None:
        report = check_levy_measure(IsotropicStableRadial(0.5, 1.0, 1))
        assert not report.has_first_moment
        assert report.to_dict()["tail_first_moment"] == "inf"

    def test_tempered_first_moment_oracle(self) -> None:
        report = check_levy_measure(TemperedStable(0.5, 1.0, 0.0, 1.0))
        expected, _ = integrate.quad(lambda y: y**-0.5 * math.exp(-y), 1.0, np.inf, epsabs=1e-13)
        assert report.has_first_moment
        assert report.tail_first_moment == pytest.approx(expected, rel=1e-9)
