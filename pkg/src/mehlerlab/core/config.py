"""Validated experiment configuration loaded from a JSON file."""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

from mehlerlab.core.constants import (
    DEFAULT_OUT_DIR,
    DEFAULT_SEED,
    EXPERIMENTS,
    OUT_DIR_ENV_VAR,
)
from mehlerlab.core.exceptions import ConfigError, UnknownExperimentError
from mehlerlab.core.storage import FileStore

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExperimentConfig:
    """Immutable snapshot of one experiment run.

    Build from a JSON file via :meth:`from_file`, or construct directly for
    testing.  ``model`` and ``params`` stay raw JSON objects; the experiment
    parses them into typed model objects.
    """

    experiment: str
    seed: int = DEFAULT_SEED
    threads: int | None = None
    tol_scale: float = 1.0
    out_dir: str = DEFAULT_OUT_DIR
    model: dict[str, Any] = field(default_factory=dict)
    spectral: dict[str, Any] | None = None
    params: dict[str, Any] = field(default_factory=dict)

    # -- factory ----------------------------------------------------------

    @classmethod
    def from_file(cls, path: Path, overrides: dict[str, Any] | None = None) -> ExperimentConfig:
        """Load *path*, apply CLI overrides and ``OU_LEVY_OUT``, then validate.

        Unlike a lenient settings loader, any validation problem raises
        :class:`ConfigError` listing every offending field.
        """
        try:
            data = FileStore.read_json(Path(path), strict=True)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("invalid config", ["<root>: expected a JSON object"])
        return cls.from_dict(data, overrides)

    @classmethod
    def from_dict(cls, data: dict[str, Any], overrides: dict[str, Any] | None = None) -> ExperimentConfig:
        problems: list[str] = []
        experiment = data.get("experiment")
        if not isinstance(experiment, str):
            problems.append("experiment: required string tag")
            experiment = ""
        unknown = sorted(set(data) - {"experiment", "seed", "threads", "tol_scale", "out", "model", "spectral", "params"})
        for key in unknown:
            problems.append(f"{key}: unknown top-level key")
        for key in ("model", "params"):
            if key in data and not isinstance(data[key], dict):
                problems.append(f"{key}: expected an object")
        if "spectral" in data and data["spectral"] is not None and not isinstance(data["spectral"], dict):
            problems.append("spectral: expected an object")
        if problems:
            raise ConfigError("invalid config", problems)

        cfg = cls(
            experiment=experiment,
            seed=data.get("seed", DEFAULT_SEED),
            threads=data.get("threads"),
            tol_scale=data.get("tol_scale", 1.0),
            out_dir=str(data.get("out", DEFAULT_OUT_DIR)),
            model=dict(data.get("model") or {}),
            spectral=data.get("spectral"),
            params=dict(data.get("params") or {}),
        )
        cfg = cfg.with_overrides(overrides or {})
        errors = cfg.validate()
        if errors:
            if any(e.startswith("experiment:") for e in errors):
                raise UnknownExperimentError("invalid config", errors)
            raise ConfigError("invalid config", errors)
        return cfg

    def with_overrides(self, overrides: dict[str, Any]) -> ExperimentConfig:
        """Apply non-``None`` CLI overrides; ``OU_LEVY_OUT`` wins over ``out``."""
        updates = {k: v for k, v in overrides.items() if v is not None}
        if "out" in updates:
            updates["out_dir"] = str(updates.pop("out"))
        env_out = os.environ.get(OUT_DIR_ENV_VAR)
        if env_out:
            updates["out_dir"] = env_out
        return replace(self, **updates) if updates else self

    # -- validation -------------------------------------------------------

    def validate(self) -> list[str]:
        """Return ``"<path>: <problem>"`` strings (empty = OK)."""
        from mehlerlab.models.ou import OUModel

        errors: list[str] = []
        if self.experiment not in EXPERIMENTS:
            errors.append(f"experiment: unknown experiment {self.experiment!r} (choose from {', '.join(EXPERIMENTS)})")
        if not isinstance(self.seed, int) or isinstance(self.seed, bool) or self.seed < 0:
            errors.append(f"seed: {self.seed!r} must be a nonnegative integer")
        if self.threads is not None and (not isinstance(self.threads, int) or self.threads < 1):
            errors.append(f"threads: {self.threads!r} must be a positive integer")
        if not isinstance(self.tol_scale, (int, float)) or not self.tol_scale > 0:
            errors.append(f"tol_scale: {self.tol_scale!r} must be a positive number")
        if self.experiment == "dim-sweep":
            if self.spectral is None:
                errors.append("spectral: required for the dim-sweep experiment")
        elif self.experiment in EXPERIMENTS:
            try:
                OUModel.from_dict(self.model, "model")
            except ConfigError as exc:
                errors.extend(exc.problems or [str(exc)])
        return errors

    @property
    def out_path(self) -> Path:
        return Path(self.out_dir)

    def to_dict(self) -> dict[str, Any]:
        return {
            "experiment": self.experiment,
            "seed": self.seed,
            "threads": self.threads,
            "tol_scale": self.tol_scale,
            "model": self.model,
            "spectral": self.spectral,
            "params": self.params,
        }


def param(params: dict[str, Any], key: str, default: Any, path: str = "params") -> Any:
    """Typed lookup in the raw ``params`` object (the default fixes the type)."""
    value = params.get(key, default)
    if default is None or value is None:
        return value
    if isinstance(default, bool):
        if not isinstance(value, bool):
            raise ConfigError("invalid config", [f"{path}.{key}: expected true or false"])
        return value
    if isinstance(default, (int, float)):
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ConfigError("invalid config", [f"{path}.{key}: expected a number"])
        if isinstance(default, int):
            if not float(value).is_integer():
                raise ConfigError("invalid config", [f"{path}.{key}: expected an integer"])
            return int(value)
        return float(value)
    if isinstance(default, list) and not isinstance(value, list):
        raise ConfigError("invalid config", [f"{path}.{key}: expected a list"])
    return value
