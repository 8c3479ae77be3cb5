"""Tests for mehlerlab.core.quadrature."""

from __future__ import annotations

import logging
import math

import numpy as np
import pytest

from mehlerlab.core.exceptions import QuadratureError
from mehlerlab.core.quadrature import integrate_scalar, integrate_vec


class TestIntegrateVec:
    def test_vector_integrand(self) -> None:
        res = integrate_vec(lambda s: np.array([1.0, s, s * s]), 0.0, 1.0, epsabs=1e-12)
        np.testing.assert_allclose(res.value, [1.0, 0.5, 1.0 / 3.0], atol=1e-12)

    def test_complex_integrand(self) -> None:
        res = integrate_vec(lambda s: np.exp(1j * s) * np.ones(2), 0.0, math.pi, epsabs=1e-12)
        np.testing.assert_allclose(res.value, [2j, 2j], atol=1e-11)

    def test_empty_interval(self) -> None:
        res = integrate_vec(lambda s: np.array([s, 1.0]), 1.0, 1.0, epsabs=1e-12)
        np.testing.assert_array_equal(res.value, [0.0, 0.0])
        assert res.error == 0.0

    def test_non_finite_raises(self) -> None:
        with pytest.raises(QuadratureError):
            integrate_vec(lambda s: np.array([np.inf]), 0.0, 1.0, epsabs=1e-10)

    def test_non_convergence_raises_by_default(self) -> None:
        with pytest.raises(QuadratureError) as info:
            integrate_vec(lambda s: np.array([math.sin(1.0 / s) / s]), 0.0, 1.0, epsabs=1e-14, limit=5)
        assert info.value.error_estimate > 1e-14
        assert "achieved error estimate" in str(info.value)

    def test_lenient_returns_estimate(self, caplog: pytest.LogCaptureFixture) -> None:
        with caplog.at_level(logging.WARNING, logger="mehlerlab.core.quadrature"):
            res = integrate_vec(
                lambda s: np.array([math.sin(1.0 / s) / s]), 0.0, 1.0, epsabs=1e-14, limit=5, strict=False
            )
        assert res.error > 1e-14
        assert "did not converge" in caplog.text


class TestIntegrateScalar:
    def test_value_and_error(self) -> None:
        value, err = integrate_scalar(lambda s: math.exp(-s), 0.0, 2.0, epsabs=1e-12)
        assert value.real == pytest.approx(1.0 - math.exp(-2.0), abs=1e-12)
        assert value.imag == 0.0
        assert err < 1e-10
