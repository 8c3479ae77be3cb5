"""Tests for mehlerlab.cores.fpk."""

from __future__ import annotations

import numpy as np
import pytest

from mehlerlab.core.constants import MIN_FPK_PATHS
from mehlerlab.cores import FPK_COLUMNS, D1Function, fpk_residual
from mehlerlab.models.functions import TrigPolynomial
from mehlerlab.models.ou import OUModel
from mehlerlab.models.verdict import PASS


class TestFpkResidual:
    def test_time_zero_is_exact(self, gaussian_1d: OUModel) -> None:
        p = TrigPolynomial.cosine([1.0])
        report = fpk_residual(gaussian_1d, p, np.array([0.0]), 0.0, MIN_FPK_PATHS)
        assert report.residual == 0.0
        assert report.rows == [[0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0]]
        assert len(report.rows[0]) == len(FPK_COLUMNS)

    def test_time_zero_for_core_function(self, gaussian_1d: OUModel) -> None:
        phi = D1Function(gaussian_1d, 1.0, np.array([1.0]))
        report = fpk_residual(gaussian_1d, phi, np.array([0.5]), 0.0, MIN_FPK_PATHS)
        assert report.verdict({"t": 0.0}).status == PASS

    def test_too_few_paths(self, gaussian_1d: OUModel) -> None:
        with pytest.raises(ValueError, match="paths"):
            fpk_residual(gaussian_1d, TrigPolynomial.cosine([1.0]), np.array([0.0]), 1.0, MIN_FPK_PATHS - 1)

    def test_odd_snapshots(self, gaussian_1d: OUModel) -> None:
        with pytest.raises(ValueError, match="snapshot"):
            fpk_residual(gaussian_1d, TrigPolynomial.cosine([1.0]), np.array([0.0]), 1.0, MIN_FPK_PATHS, snapshots=3)

    @pytest.mark.slow
    def test_trig_polynomial_passes(self, compound_poisson_1d: OUModel) -> None:
        p = TrigPolynomial.cosine([1.0])
        report = fpk_residual(compound_poisson_1d, p, np.array([0.3]), 0.5, 2000, master_seed=21, snapshots=10)
        assert [r[0] for r in report.rows] == pytest.approx(np.linspace(0.0, 0.5, 11).tolist())
        assert report.rows[0][1] == pytest.approx(np.cos(0.3))
        assert report.verdict({"t": 0.5}).status == PASS

    @pytest.mark.slow
    def test_runs_are_reproducible(self, gaussian_1d: OUModel) -> None:
        p = TrigPolynomial.sine([2.0])
        first = fpk_residual(gaussian_1d, p, np.array([0.0]), 0.2, MIN_FPK_PATHS, master_seed=5, snapshots=4)
        second = fpk_residual(gaussian_1d, p, np.array([0.0]), 0.2, MIN_FPK_PATHS, master_seed=5, snapshots=4)
        assert first.rows == second.rows
