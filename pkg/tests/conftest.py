"""Shared pytest fixtures for mehlerlab tests."""

from __future__ import annotations

import json
from collections.abc import Callable
from pathlib import Path
from typing import Any

import numpy as np
import pytest

from mehlerlab.core.constants import OUT_DIR_ENV_VAR
from mehlerlab.core.storage import FileStore
from mehlerlab.levy.measures import (
    CompoundPoisson,
    GaussianLaw,
    IsotropicStableRadial,
    NoJumps,
    TemperedStable,
)
from mehlerlab.levy.triplet import LevyTriplet
from mehlerlab.models.ou import OUModel

ROTATION = np.array([[0.0, 1.0], [-1.0, 0.0]])


@pytest.fixture(autouse=True)
def _no_out_override(monkeypatch: pytest.MonkeyPatch) -> None:
    """Keep a developer's OU_LEVY_OUT from redirecting test output."""
    monkeypatch.delenv(OUT_DIR_ENV_VAR, raising=False)


@pytest.fixture
def file_store() -> FileStore:
    return FileStore()


# -- models ------------------------------------------------------------------


@pytest.fixture
def gaussian_1d() -> OUModel:
    """``dX = -X dt + dW`` with unit variance."""
    return OUModel(np.array([[-1.0]]), LevyTriplet.gaussian([[1.0]]))


@pytest.fixture
def rotation_gaussian_2d() -> OUModel:
    return OUModel(ROTATION, LevyTriplet.gaussian(np.eye(2)))


@pytest.fixture
def compound_poisson_1d() -> OUModel:
    law = GaussianLaw((0.0,), ((0.25,),))
    triplet = LevyTriplet(np.array([[0.1]]), np.array([0.2]), CompoundPoisson(2.0, law))
    return OUModel(np.array([[-0.5]]), triplet)


@pytest.fixture
def compound_poisson_2d() -> OUModel:
    law = GaussianLaw((0.0, 0.0), ((0.25, 0.0), (0.0, 0.25)))
    triplet = LevyTriplet(np.zeros((2, 2)), np.zeros(2), CompoundPoisson(1.5, law))
    return OUModel(np.array([[-1.0, 0.5], [0.0, -1.0]]), triplet)


@pytest.fixture
def stable_1d() -> OUModel:
    """α = 0.5 stable noise: no finite first moment."""
    triplet = LevyTriplet(np.zeros((1, 1)), np.zeros(1), IsotropicStableRadial(0.5, 1.0, 1))
    return OUModel(np.array([[-1.0]]), triplet)


@pytest.fixture
def stable_2d() -> OUModel:
    triplet = LevyTriplet(np.zeros((2, 2)), np.zeros(2), IsotropicStableRadial(0.5, 1.0, 2))
    return OUModel(-np.eye(2), triplet)


@pytest.fixture
def tempered_1d() -> OUModel:
    triplet = LevyTriplet(np.zeros((1, 1)), np.zeros(1), TemperedStable(0.5, 1.0, 0.0, 1.0))
    return OUModel(np.array([[-1.0]]), triplet)


@pytest.fixture
def deterministic_2d() -> OUModel:
    triplet = LevyTriplet(np.zeros((2, 2)), np.zeros(2), NoJumps(2))
    return OUModel(ROTATION, triplet)


# -- configs -----------------------------------------------------------------


@pytest.fixture
def gaussian_model_dict() -> dict[str, Any]:
    return {"A": [[-1.0]], "triplet": {"Q": [[1.0]], "a": [0.0]}}


@pytest.fixture
def write_config(tmp_path: Path) -> Callable[[dict[str, Any]], Path]:
    """Write a config dict to ``tmp_path`` and return its path."""

    def _write(data: dict[str, Any], name: str = "config.json") -> Path:
        p = tmp_path / name
        p.write_text(json.dumps(data, indent=2), encoding="utf-8")
        return p

    return _write
