"""Tests for mehlerlab.cores.phi."""

from __future__ import annotations

import math

import numpy as np
import pytest
from scipy import integrate

from mehlerlab.cores import (
    D1Function,
    apply_L_phi,
    eval_phi,
    phi_as_smooth_function,
    phi_generator_gap,
    phi_semigroup_identity,
)
from mehlerlab.levy.measures import NoJumps
from mehlerlab.levy.triplet import LevyTriplet
from mehlerlab.models.ou import OUModel


@pytest.fixture
def frozen_2d() -> OUModel:
    """No drift, no noise: every ``P_s`` is the identity."""
    return OUModel(np.zeros((2, 2)), LevyTriplet(np.zeros((2, 2)), np.zeros(2), NoJumps(2)))


class TestD1Function:
    def test_nonpositive_horizon_rejected(self, gaussian_1d: OUModel) -> None:
        with pytest.raises(ValueError, match="a must be positive"):
            D1Function(gaussian_1d, 0.0, np.array([1.0]))

    def test_dimension_mismatch_rejected(self, gaussian_1d: OUModel) -> None:
        with pytest.raises(ValueError, match="dimension"):
            D1Function(gaussian_1d, 1.0, np.array([1.0, 0.0]))

    def test_flow_norm_bound(self, gaussian_1d: OUModel) -> None:
        phi = D1Function(gaussian_1d, 2.0, np.array([3.0]))
        assert phi.flow_norm_bound == pytest.approx(3.0 * math.exp(2.0))


class TestEvalPhi:
    def test_frozen_model_is_scaled_mode(self, frozen_2d: OUModel) -> None:
        h = np.array([1.0, -0.5])
        x = np.array([0.3, 0.8])
        phi = D1Function(frozen_2d, 1.5, h)
        assert eval_phi(phi, x) == pytest.approx(1.5 * np.exp(1j * (h @ x)), abs=1e-10)

    def test_gaussian_against_direct_quadrature(self, gaussian_1d: OUModel) -> None:
        h, a, x = 1.3, 0.8, 0.6

        def integrand(s: float) -> complex:
            decay = math.exp(-(h**2) * (1 - math.exp(-2 * s)) / 4)
            return decay * np.exp(1j * x * h * math.exp(-s))

        re, _ = integrate.quad(lambda s: integrand(s).real, 0.0, a, epsabs=1e-13)
        im, _ = integrate.quad(lambda s: integrand(s).imag, 0.0, a, epsabs=1e-13)
        phi = D1Function(gaussian_1d, a, np.array([h]))
        assert eval_phi(phi, np.array([x])) == pytest.approx(complex(re, im), abs=1e-9)

    def test_nested_matches_profile(self, compound_poisson_1d: OUModel) -> None:
        phi = D1Function(compound_poisson_1d, 1.0, np.array([2.0]))
        x = np.array([[0.1], [0.7]])
        np.testing.assert_allclose(eval_phi(phi, x, nested=True), eval_phi(phi, x), atol=1e-9)

    def test_batch_shape(self, gaussian_1d: OUModel) -> None:
        phi = D1Function(gaussian_1d, 1.0, np.array([1.0]))
        assert eval_phi(phi, np.zeros((5, 1))).shape == (5,)


class TestApplyLPhi:
    def test_frozen_model_is_annihilated(self, frozen_2d: OUModel) -> None:
        phi = D1Function(frozen_2d, 1.0, np.array([0.5, 2.0]))
        assert apply_L_phi(phi, np.array([1.0, -1.0])) == pytest.approx(0.0, abs=1e-14)

    def test_gaussian_boundary_terms(self, gaussian_1d: OUModel) -> None:
        h, a, x = 1.0, 0.5, 0.4
        phi = D1Function(gaussian_1d, a, np.array([h]))
        kappa = math.exp(-(h**2) * (1 - math.exp(-2 * a)) / 4)
        expected = np.exp(1j * x * h * math.exp(-a)) * kappa - np.exp(1j * x * h)
        assert apply_L_phi(phi, np.array([x])) == pytest.approx(expected, abs=1e-10)

    def test_matches_quadrature_generator(self, gaussian_1d: OUModel) -> None:
        phi = D1Function(gaussian_1d, 1.0, np.array([1.5]))
        gap, err = phi_generator_gap(phi, np.array([0.3]))
        assert gap <= 1e-6 + err


class TestPhiAsSmoothFunction:
    def test_gradient_consistent_with_values(self, gaussian_1d: OUModel) -> None:
        f = phi_as_smooth_function(D1Function(gaussian_1d, 1.0, np.array([1.0])), "imag")
        assert f.gradient_error(np.array([[0.2], [1.1]]), step=1e-4) <= 1e-5

    def test_bounds_scale_with_horizon(self, gaussian_1d: OUModel) -> None:
        phi = D1Function(gaussian_1d, 0.5, np.array([2.0]))
        f = phi_as_smooth_function(phi)
        assert f.bounds.sup == 0.5
        assert f.bounds.hessian == pytest.approx(0.5 * phi.flow_norm_bound**2)


class TestSemigroupIdentity:
    def test_time_zero(self, gaussian_1d: OUModel) -> None:
        phi = D1Function(gaussian_1d, 1.0, np.array([1.0]))
        assert phi_semigroup_identity(phi, 0.0, np.array([0.2])) == 0.0

    def test_rotation_model(self, rotation_gaussian_2d: OUModel) -> None:
        phi = D1Function(rotation_gaussian_2d, 1.0, np.array([1.0, 0.0]))
        assert phi_semigroup_identity(phi, 0.5, np.array([0.3, 0.2])) <= 1e-7

    def test_negative_time_rejected(self, gaussian_1d: OUModel) -> None:
        with pytest.raises(ValueError):
            phi_semigroup_identity(D1Function(gaussian_1d, 1.0, np.array([1.0])), -1.0, np.array([0.0]))
