"""Tests for mehlerlab.levy.triplet."""

from __future__ import annotations

import numpy as np
import pytest

from mehlerlab.core.exceptions import ConfigError, DimensionError, LevyMeasureError
from mehlerlab.levy.measures import NoJumps, TemperedStable
from mehlerlab.levy.triplet import LevyTriplet


class TestLevyTriplet:
    def test_gaussian_constructor(self) -> None:
        triplet = LevyTriplet.gaussian(np.eye(2))
        assert triplet.dim == 2
        assert triplet.nu.kind == "none"
        np.testing.assert_array_equal(triplet.a, [0.0, 0.0])

    def test_arrays_are_read_only(self) -> None:
        triplet = LevyTriplet.gaussian([[1.0]])
        with pytest.raises(ValueError):
            triplet.Q[0, 0] = 2.0

    def test_tiny_negative_eigenvalue_clamped(self) -> None:
        triplet = LevyTriplet.gaussian([[1.0, 1.0], [1.0, 1.0 - 1e-13]])
        assert np.linalg.eigvalsh(triplet.Q).min() >= -1e-15

    def test_negative_definite_rejected(self) -> None:
        with pytest.raises(LevyMeasureError, match="negative eigenvalue"):
            LevyTriplet.gaussian([[-1.0]])

    def test_asymmetric_rejected(self) -> None:
        with pytest.raises(LevyMeasureError, match="symmetric"):
            LevyTriplet.gaussian([[1.0, 0.5], [0.0, 1.0]])

    def test_dimension_mismatch(self) -> None:
        with pytest.raises(DimensionError):
            LevyTriplet(np.eye(2), np.zeros(2), TemperedStable(0.5))

    def test_with_measure(self) -> None:
        triplet = LevyTriplet.gaussian([[1.0]]).with_measure(TemperedStable(0.5))
        assert triplet.nu.kind == "tempered_stable"
        assert triplet.Q[0, 0] == 1.0


class TestTripletFromDict:
    def test_missing_nu_means_no_jumps(self) -> None:
        triplet = LevyTriplet.from_dict({"Q": [[1.0]], "a": [0.5]})
        assert isinstance(triplet.nu, NoJumps)

    def test_roundtrip(self) -> None:
        triplet = LevyTriplet(np.eye(1), np.array([0.2]), TemperedStable(0.5, 1.0, 0.0, 1.0))
        assert LevyTriplet.from_dict(triplet.to_dict()).to_dict() == triplet.to_dict()

    def test_problems_carry_paths(self) -> None:
        with pytest.raises(ConfigError) as info:
            LevyTriplet.from_dict({"Q": "identity", "a": []}, "model.triplet")
        assert "model.triplet.Q: expected a square matrix (list of rows)" in info.value.problems
        assert "model.triplet.a: expected a non-empty list of numbers" in info.value.problems

    def test_inconsistent_dimensions_reported(self) -> None:
        with pytest.raises(ConfigError, match="dimension"):
            LevyTriplet.from_dict({"Q": [[1.0, 0.0], [0.0, 1.0]], "a": [0.0]})
