"""Tests for mehlerlab.models.cores."""

from __future__ import annotations

import numpy as np
import pytest

from mehlerlab.core.exceptions import DimensionError
from mehlerlab.models.cores import EmpiricalMeasure
from mehlerlab.models.ou import EnsembleMeta, PathEnsemble


class TestEmpiricalMeasure:
    def test_uniform_weights(self) -> None:
        gamma = EmpiricalMeasure(np.zeros((4, 2)), 0.5)
        np.testing.assert_allclose(gamma.weights, 0.25)
        assert gamma.total_mass == pytest.approx(1.0)
        assert (gamma.size, gamma.dim) == (4, 2)

    def test_weights_must_sum_to_one(self) -> None:
        with pytest.raises(ValueError, match="total mass"):
            EmpiricalMeasure(np.zeros((2, 1)), 0.0, np.array([0.5, 0.6]))

    def test_negative_weights(self) -> None:
        with pytest.raises(ValueError):
            EmpiricalMeasure(np.zeros((2, 1)), 0.0, np.array([1.5, -0.5]))

    def test_weight_count(self) -> None:
        with pytest.raises(DimensionError):
            EmpiricalMeasure(np.zeros((2, 1)), 0.0, np.array([1.0]))

    def test_integrate(self) -> None:
        gamma = EmpiricalMeasure(np.array([[0.0], [1.0]]), 0.0, np.array([0.25, 0.75]))
        assert gamma.integrate(np.array([2.0, 4.0])) == pytest.approx(3.5)
        assert gamma.integrate(np.array([1j, 1.0])) == pytest.approx(0.75 + 0.25j)

    def test_from_ensemble(self) -> None:
        meta = EnsembleMeta(0, "exact", 0.01, float("inf"), (0.0,))
        ens = PathEnsemble(np.array([0.0, 0.5]), np.arange(6, dtype=float).reshape(3, 2, 1), meta)
        gamma = EmpiricalMeasure.from_ensemble(ens, 1)
        assert gamma.t == 0.5
        np.testing.assert_array_equal(gamma.atoms[:, 0], [1.0, 3.0, 5.0])
