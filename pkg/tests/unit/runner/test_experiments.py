"""Tests for mehlerlab.runner.experiments."""

from __future__ import annotations

from typing import Any

import numpy as np
import pytest

from mehlerlab.core.config import ExperimentConfig
from mehlerlab.core.constants import EXPERIMENTS
from mehlerlab.core.exceptions import ConfigError, TraceClassError
from mehlerlab.levy.exponent import char_exponent
from mehlerlab.models.verdict import INCONCLUSIVE, PASS
from mehlerlab.runner import EXPERIMENT_HANDLERS, experiments

HEAT_SPECTRAL = {
    "eigen": {"family": "power", "scale": -1.0, "exponent": 2.0},
    "q": {"family": "power", "scale": 1.0, "exponent": -2.0},
}


def _cfg(experiment: str, model: dict[str, Any] | None = None, **params: Any) -> ExperimentConfig:
    return ExperimentConfig(experiment=experiment, model=model or {}, params=params)


class TestHandlerTable:
    def test_every_experiment_has_a_handler(self) -> None:
        assert set(EXPERIMENT_HANDLERS) == set(EXPERIMENTS)


class TestCauchy:
    def test_minimal_config_gives_one_verdict(self, gaussian_model_dict: dict[str, Any]) -> None:
        result = EXPERIMENT_HANDLERS["cauchy"](_cfg("cauchy", gaussian_model_dict))
        assert len(result.verdicts) == 1
        assert result.verdicts[0].status == PASS
        assert result.tables[0].name == "cauchy"
        assert result.tables[0].header == ["t", "residual", "budget"]

    def test_optional_checks_add_verdicts(self, gaussian_model_dict: dict[str, Any]) -> None:
        cfg = _cfg("cauchy", gaussian_model_dict, times=[0.5, 1.0], continuity_times=[0.1, 0.01], law_split=0.3)
        result = EXPERIMENT_HANDLERS["cauchy"](cfg)
        assert [v.check for v in result.verdicts] == [
            "cauchy_residual",
            "cauchy_residual",
            "continuity_profile",
            "semigroup_law",
        ]
        assert [t.name for t in result.tables] == ["cauchy", "continuity"]

    def test_wrong_point_dimension(self, gaussian_model_dict: dict[str, Any]) -> None:
        with pytest.raises(ConfigError) as info:
            EXPERIMENT_HANDLERS["cauchy"](_cfg("cauchy", gaussian_model_dict, x=[0.0, 1.0]))
        assert info.value.problems == ["params.x: expected 1 numbers, got 2"]

    def test_trig_dimension_mismatch(self, gaussian_model_dict: dict[str, Any]) -> None:
        f = {"terms": [{"coefficient": [1.0, 0.0], "frequency": [1.0, 0.0]}]}
        with pytest.raises(ConfigError, match="invalid config"):
            EXPERIMENT_HANDLERS["cauchy"](_cfg("cauchy", gaussian_model_dict, f=f))


class TestCharCheck:
    def test_gaussian_exponent_agrees(self, gaussian_model_dict: dict[str, Any]) -> None:
        result = EXPERIMENT_HANDLERS["char-check"](_cfg("char-check", gaussian_model_dict))
        assert [v.check for v in result.verdicts] == ["char_exponent", "chapman_kolmogorov"]
        assert all(v.status == PASS for v in result.verdicts)
        table = result.tables[0]
        assert table.header == ["u_1", "psi_re", "psi_im", "psi_quad_re", "psi_quad_im", "abs_diff"]
        assert len(table.rows) == 4

    def test_large_quadrature_estimate_is_inconclusive(
        self, monkeypatch: pytest.MonkeyPatch, gaussian_model_dict: dict[str, Any]
    ) -> None:
        def unconverged(triplet: Any, u: np.ndarray, *, strict: bool = True) -> tuple[np.ndarray, float]:
            assert not strict
            return np.asarray(char_exponent(triplet, u)), 1e-3

        monkeypatch.setattr(experiments, "quadrature_exponent", unconverged)
        result = EXPERIMENT_HANDLERS["char-check"](_cfg("char-check", gaussian_model_dict))
        verdict = result.verdicts[0]
        assert verdict.check == "char_exponent"
        assert verdict.status == INCONCLUSIVE
        assert verdict.discrepancy == 0.0
        assert verdict.budget > 1e-3
        assert verdict.details["quadrature_error"] == 1e-3


class TestSimulate:
    def test_rejects_nonpositive_horizon(self, gaussian_model_dict: dict[str, Any]) -> None:
        with pytest.raises(ConfigError) as info:
            EXPERIMENT_HANDLERS["simulate"](_cfg("simulate", gaussian_model_dict, t=0.0, snapshots=0))
        assert info.value.problems == ["params.t: must be positive", "params.snapshots: must be >= 1"]

    def test_small_ensemble(self, gaussian_model_dict: dict[str, Any]) -> None:
        cfg = _cfg("simulate", gaussian_model_dict, n_paths=500, snapshots=2, t=0.5)
        result = EXPERIMENT_HANDLERS["simulate"](cfg)
        assert result.ensemble is not None
        assert result.ensemble.states.shape == (500, 3, 1)
        assert result.verdicts[0].check == "empirical_characteristic"

    def test_eps_outside_range(self, gaussian_model_dict: dict[str, Any]) -> None:
        with pytest.raises(ConfigError, match="invalid config"):
            EXPERIMENT_HANDLERS["simulate"](_cfg("simulate", gaussian_model_dict, eps=2.0))


class TestPhiCore:
    def test_gaussian_identities(self, gaussian_model_dict: dict[str, Any]) -> None:
        cfg = _cfg("phi-core", gaussian_model_dict, a=[0.5], times=[0.0, 0.5], x=[[0.0]])
        result = EXPERIMENT_HANDLERS["phi-core"](cfg)
        assert [v.check for v in result.verdicts] == ["phi_semigroup_identity", "phi_generator"]
        assert all(v.status == PASS for v in result.verdicts)
        assert len(result.tables[0].rows) == 2

    def test_generator_can_be_skipped(self, gaussian_model_dict: dict[str, Any]) -> None:
        cfg = _cfg("phi-core", gaussian_model_dict, a=[0.5], times=[0.25], x=[[0.0]], generator=False)
        result = EXPERIMENT_HANDLERS["phi-core"](cfg)
        assert len(result.verdicts) == 1


class TestFpkFunctions:
    def test_unknown_function_type(self, gaussian_model_dict: dict[str, Any]) -> None:
        cfg = _cfg("fpk", gaussian_model_dict, functions=[{"type": "wavelet"}])
        with pytest.raises(ConfigError) as info:
            EXPERIMENT_HANDLERS["fpk"](cfg)
        assert info.value.problems == ["params.functions[0].type: expected 'trig' or 'phi'"]

    def test_nonpositive_phi_horizon(self, gaussian_model_dict: dict[str, Any]) -> None:
        cfg = _cfg("fpk", gaussian_model_dict, functions=[{"type": "phi", "a": 0.0}])
        with pytest.raises(ConfigError, match="invalid config"):
            EXPERIMENT_HANDLERS["fpk"](cfg)


class TestDimSweep:
    def test_heat_model_sweep(self) -> None:
        cfg = ExperimentConfig(experiment="dim-sweep", spectral=HEAT_SPECTRAL, params={"dims": [1, 2, 4], "radii": [1.0]})
        result = EXPERIMENT_HANDLERS["dim-sweep"](cfg)
        assert result.verdicts[0].status == PASS
        assert [t.name for t in result.tables] == ["dim_sweep", "ca_membership"]
        assert [r[0] for r in result.tables[0].rows] == [1, 2, 4]

    def test_stability_verdict_from_dimension_eight(self) -> None:
        cfg = ExperimentConfig(experiment="dim-sweep", spectral=HEAT_SPECTRAL, params={"dims": [4, 8, 16]})
        result = EXPERIMENT_HANDLERS["dim-sweep"](cfg)
        assert [v.check for v in result.verdicts] == ["dimension_sweep", "dimension_stability"]
        assert all(v.status == PASS for v in result.verdicts)

    def test_trace_gate(self) -> None:
        spectral = dict(HEAT_SPECTRAL, q={"family": "power", "scale": 1.0, "exponent": -1.0})
        cfg = ExperimentConfig(experiment="dim-sweep", spectral=spectral)
        with pytest.raises(TraceClassError):
            EXPERIMENT_HANDLERS["dim-sweep"](cfg)


class TestApprox:
    def test_malformed_schedule(self, gaussian_model_dict: dict[str, Any]) -> None:
        with pytest.raises(ConfigError, match="invalid config"):
            EXPERIMENT_HANDLERS["approx"](_cfg("approx", gaussian_model_dict, schedule=[[4, 32, 1]]))

    @pytest.mark.slow
    def test_default_schedule_in_one_dimension(self, gaussian_model_dict: dict[str, Any]) -> None:
        result = EXPERIMENT_HANDLERS["approx"](_cfg("approx", gaussian_model_dict))
        assert [v.check for v in result.verdicts] == ["approx_uniform_bound", "approx_pointwise", "d0_membership"]
        assert all(v.status == PASS for v in result.verdicts)
        bounds = result.tables[1].rows
        assert all(lhs <= 1.05 * m for _, _, lhs, m in bounds)
        assert np.isfinite(result.verdicts[1].discrepancy)
