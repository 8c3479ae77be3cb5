"""Tests for mehlerlab.models package-level imports."""

from __future__ import annotations


class TestPackageImports:
    """All model classes should be importable from the package root."""

    def test_ou_model_importable(self) -> None:
        import numpy as np

        from mehlerlab.levy import LevyTriplet
        from mehlerlab.models import OUModel

        m = OUModel(np.array([[-1.0]]), LevyTriplet.gaussian([[1.0]]))
        assert m.dim == 1

    def test_trig_polynomial_importable(self) -> None:
        from mehlerlab.models import TrigPolynomial

        assert TrigPolynomial.constant(1.0, 2).dim == 2

    def test_verdict_importable(self) -> None:
        from mehlerlab.models import Verdict, exit_code

        assert exit_code([Verdict.compare("c", "i", {}, 0.0, 1.0)]) == 0

    def test_type_aliases_importable(self) -> None:
        from mehlerlab.models import Matrix, Points, ScalarField, Status, Vector

        assert all(alias is not None for alias in (Matrix, Points, ScalarField, Status, Vector))
