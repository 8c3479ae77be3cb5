"""Tests for mehlerlab.models.ou."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest

from mehlerlab.core.exceptions import ConfigError, DimensionError, GridError
from mehlerlab.core.paths import RunPaths
from mehlerlab.levy.triplet import LevyTriplet
from mehlerlab.models.ou import EnsembleMeta, OUModel, PathEnsemble


@pytest.fixture
def meta() -> EnsembleMeta:
    return EnsembleMeta(master_seed=7, scheme="exact", small_jump_cut=0.01, truncation=float("inf"), x0=(1.0, 0.0))


class TestOUModel:
    def test_shape_checked(self) -> None:
        with pytest.raises(DimensionError):
            OUModel(np.eye(2), LevyTriplet.gaussian([[1.0]]))

    def test_flags(self, deterministic_2d: OUModel, gaussian_1d: OUModel, rotation_gaussian_2d: OUModel) -> None:
        assert deterministic_2d.is_deterministic
        assert not gaussian_1d.is_deterministic
        assert gaussian_1d.is_diagonal
        assert not rotation_gaussian_2d.is_diagonal

    def test_from_dict_defaults_a_to_zero(self) -> None:
        model = OUModel.from_dict({"triplet": {"Q": [[1.0, 0.0], [0.0, 1.0]], "a": [0.0, 0.0]}})
        np.testing.assert_array_equal(model.A, np.zeros((2, 2)))

    def test_from_dict_bad_matrix(self) -> None:
        with pytest.raises(ConfigError) as info:
            OUModel.from_dict({"A": [[1.0, 0.0]], "triplet": {"Q": [[1.0]], "a": [0.0]}})
        assert info.value.problems[0].startswith("model.A:")

    def test_roundtrip(self, compound_poisson_2d: OUModel) -> None:
        data = json.loads(json.dumps(compound_poisson_2d.to_dict()))
        assert OUModel.from_dict(data).to_dict() == compound_poisson_2d.to_dict()


class TestPathEnsemble:
    def test_grid_must_start_at_zero(self, meta: EnsembleMeta) -> None:
        with pytest.raises(GridError):
            PathEnsemble(np.array([0.5, 1.0]), np.zeros((1, 2, 2)), meta)

    def test_grid_must_increase(self, meta: EnsembleMeta) -> None:
        with pytest.raises(GridError):
            PathEnsemble(np.array([0.0, 1.0, 1.0]), np.zeros((1, 3, 2)), meta)

    def test_states_shape_checked(self, meta: EnsembleMeta) -> None:
        with pytest.raises(DimensionError):
            PathEnsemble(np.array([0.0, 1.0]), np.zeros((1, 3, 2)), meta)

    def test_rows_are_path_major(self, meta: EnsembleMeta) -> None:
        states = np.arange(8, dtype=float).reshape(2, 2, 2)
        ens = PathEnsemble(np.array([0.0, 0.5]), states, meta)
        assert ens.rows() == [
            [0, 0.0, 0.0, 1.0],
            [0, 0.5, 2.0, 3.0],
            [1, 0.0, 4.0, 5.0],
            [1, 0.5, 6.0, 7.0],
        ]
        np.testing.assert_array_equal(ens.final, [[2.0, 3.0], [6.0, 7.0]])

    def test_export_writes_three_files(self, meta: EnsembleMeta, tmp_path: Path) -> None:
        ens = PathEnsemble(np.array([0.0, 1.0]), np.ones((3, 2, 2)), meta, steps=4)
        paths = RunPaths(tmp_path, "simulate")
        ens.export(paths)
        header = paths.ensemble_csv().read_text(encoding="utf-8").splitlines()[0]
        assert header == "path_id,t,x_1,x_2"
        np.testing.assert_array_equal(np.load(paths.ensemble_array()), ens.states)
        sidecar = json.loads(paths.ensemble_meta().read_text(encoding="utf-8"))
        assert sidecar["truncation"] == "inf"
        assert sidecar["n_paths"] == 3
        assert sidecar["internal_steps"] == 4
        assert sidecar["master_seed"] == 7
