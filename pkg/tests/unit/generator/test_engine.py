"""Tests for mehlerlab.generator.engine."""

from __future__ import annotations

import numpy as np
import pytest

from mehlerlab.functions.bump import constant_function, make_bump, make_linear
from mehlerlab.generator import apply_L0, apply_L0_batch, apply_L0_trig, apply_L1
from mehlerlab.levy.measures import FiniteAtomic, NoJumps
from mehlerlab.levy.triplet import LevyTriplet
from mehlerlab.models.functions import TrigPolynomial
from mehlerlab.models.ou import OUModel


class TestApplyL1:
    def test_trivial_triplet_is_zero(self) -> None:
        triplet = LevyTriplet(np.zeros((2, 2)), np.zeros(2), NoJumps(2))
        value, err = apply_L1(triplet, make_bump([0.0, 0.0], 1.0), np.array([0.3, -0.2]))
        assert value == 0.0
        assert err == 0.0

    def test_linear_function_sees_only_drift(self) -> None:
        nu = FiniteAtomic((1.0,), ((0.5, -0.5),))
        triplet = LevyTriplet(np.eye(2), np.array([0.3, -0.7]), nu)
        f = make_linear([2.0, 1.0], window=10.0)
        value, _ = apply_L1(triplet, f, np.array([1.0, 1.0]))
        assert value == pytest.approx(0.3 * 2.0 - 0.7 * 1.0, abs=1e-12)

    def test_constant_is_annihilated(self, compound_poisson_1d: OUModel) -> None:
        value, _ = apply_L1(compound_poisson_1d.triplet, constant_function(3.0, 1), np.array([0.4]))
        assert value == pytest.approx(0.0, abs=1e-12)

    def test_gaussian_part_is_half_trace(self) -> None:
        triplet = LevyTriplet.gaussian([[2.0]])
        f = TrigPolynomial.cosine([1.0]).as_smooth_function()
        value, _ = apply_L1(triplet, f, np.array([0.0]))
        # ½·2·(-cos 0)
        assert value == pytest.approx(-1.0, abs=1e-12)

    def test_cutoff_does_not_change_result(self) -> None:
        nu = FiniteAtomic((1.0, 0.5), ((0.8,), (-1.5,)))
        triplet = LevyTriplet(np.zeros((1, 1)), np.array([0.1]), nu)
        f = make_bump([0.0], 2.0)
        x = np.array([0.3])
        base, _ = apply_L1(triplet, f, x)
        moved, _ = apply_L1(triplet, f, x, cutoff=0.5)
        assert moved == pytest.approx(base, abs=1e-10)

    def test_nonpositive_cutoff_rejected(self, gaussian_1d: OUModel) -> None:
        with pytest.raises(ValueError, match="cutoff"):
            apply_L1(gaussian_1d.triplet, make_bump([0.0], 1.0), np.array([0.0]), cutoff=0.0)


class TestApplyL0Trig:
    def test_deterministic_cosine(self) -> None:
        A = np.array([[-1.0, 0.0], [0.0, -2.0]])
        model = OUModel(A, LevyTriplet(np.zeros((2, 2)), np.zeros(2), NoJumps(2)))
        h = np.array([1.0, 0.5])
        x = np.array([0.4, -0.3])
        value = apply_L0_trig(model, TrigPolynomial.cosine(h), x)
        expected = -float((A @ x) @ h) * np.sin(h @ x)
        assert value == pytest.approx(expected, abs=1e-14)

    def test_gaussian_monomial_closed_form(self) -> None:
        A = np.array([[-1.0, 0.5], [0.0, -1.0]])
        Q = np.array([[1.0, 0.2], [0.2, 0.5]])
        a = np.array([0.3, -0.1])
        model = OUModel(A, LevyTriplet.gaussian(Q, a))
        h = np.array([0.7, -1.2])
        x = np.array([0.25, 1.5])
        expected = np.exp(1j * (h @ x)) * (1j * ((A @ x) @ h) - 0.5 * (h @ Q @ h) + 1j * (a @ h))
        assert apply_L0_trig(model, TrigPolynomial.monomial(h), x) == pytest.approx(expected, abs=1e-13)

    def test_constant_is_annihilated(self, stable_2d: OUModel) -> None:
        value = apply_L0_trig(stable_2d, TrigPolynomial.constant(2.0, 2), np.array([1.0, 2.0]))
        assert value == pytest.approx(0.0, abs=1e-14)

    def test_batch_points_shape(self, rotation_gaussian_2d: OUModel) -> None:
        pts = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
        out = apply_L0_trig(rotation_gaussian_2d, TrigPolynomial.cosine([1.0, 1.0]), pts)
        assert out.shape == (3,)


class TestApplyL0:
    @pytest.mark.parametrize("fixture", ["compound_poisson_1d", "gaussian_1d"])
    def test_matches_exact_trig_route(self, fixture: str, request: pytest.FixtureRequest) -> None:
        model: OUModel = request.getfixturevalue(fixture)
        p = TrigPolynomial.cosine([1.3])
        x = np.array([0.6])
        generic, _ = apply_L0(model, p.as_smooth_function(), x)
        exact = apply_L0_trig(model, p, x)
        assert generic == pytest.approx(np.real(exact), abs=1e-7)

    def test_tempered_matches_exact_trig_route(self, tempered_1d: OUModel) -> None:
        p = TrigPolynomial.cosine([1.0])
        x = np.array([0.2])
        generic, _ = apply_L0(tempered_1d, p.as_smooth_function(), x)
        assert generic == pytest.approx(np.real(apply_L0_trig(tempered_1d, p, x)), abs=1e-6)

    def test_transport_term_for_deterministic_flow(self, deterministic_2d: OUModel) -> None:
        f = make_linear([1.0, 0.0], window=5.0)
        x = np.array([0.5, 2.0])
        value, _ = apply_L0(deterministic_2d, f, x)
        # ⟨Ax, e₁⟩ = x₂ for the rotation
        assert value == pytest.approx(2.0, abs=1e-12)


class TestApplyL0Batch:
    def test_agrees_with_pointwise(self, compound_poisson_2d: OUModel) -> None:
        f = make_bump([0.0, 0.0], 1.5)
        pts = np.array([[0.0, 0.0], [0.5, -0.5], [0.5, -0.5], [1.0, 0.2]])
        batch, _ = apply_L0_batch(compound_poisson_2d, f, pts)
        assert batch.shape == (4,)
        assert batch[1] == batch[2]
        for row, got in zip(pts, batch):
            single, _ = apply_L0(compound_poisson_2d, f, row)
            assert got == pytest.approx(single, abs=1e-7)
