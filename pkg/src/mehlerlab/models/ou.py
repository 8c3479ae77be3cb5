"""Ornstein–Uhlenbeck model data and Monte Carlo path ensembles.

An :class:`OUModel` is the pair ``(A, triplet)`` of ``dX = AX dt + dZ``.  A
:class:`PathEnsemble` is a sample of trajectories of that model on a time
grid, together with the provenance needed to reproduce it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from mehlerlab.core.exceptions import ConfigError, DimensionError, GridError
from mehlerlab.core.paths import RunPaths
from mehlerlab.core.storage import FileStore
from mehlerlab.levy.measures import NoJumps
from mehlerlab.levy.triplet import LevyTriplet


@dataclass(frozen=True, eq=False)
class OUModel:
    """Drift matrix ``A`` plus the Lévy triplet of the driving noise."""

    A: np.ndarray
    triplet: LevyTriplet

    def __post_init__(self) -> None:
        a = np.atleast_2d(np.asarray(self.A, dtype=float))
        if a.shape != (self.triplet.dim, self.triplet.dim):
            raise DimensionError(f"A has shape {a.shape}, triplet dimension is {self.triplet.dim}")
        a.setflags(write=False)
        object.__setattr__(self, "A", a)

    @property
    def dim(self) -> int:
        return self.triplet.dim

    @property
    def is_diagonal(self) -> bool:
        return not np.any(self.A - np.diag(np.diag(self.A)))

    @property
    def is_deterministic(self) -> bool:
        """No Gaussian part, no drift and no jumps."""
        t = self.triplet
        return isinstance(t.nu, NoJumps) and not np.any(t.Q) and not np.any(t.a)

    def to_dict(self) -> dict[str, Any]:
        return {"A": self.A.tolist(), "triplet": self.triplet.to_dict()}

    @classmethod
    def from_dict(cls, data: Any, path: str = "model") -> OUModel:
        if not isinstance(data, dict):
            raise ConfigError("invalid OU model", [f"{path}: expected an object"])
        triplet = LevyTriplet.from_dict(data.get("triplet"), f"{path}.triplet")
        raw = data.get("A")
        if raw is None:
            return cls(np.zeros((triplet.dim, triplet.dim)), triplet)
        try:
            return cls(np.asarray(raw, dtype=float), triplet)
        except (TypeError, ValueError, DimensionError) as exc:
            raise ConfigError("invalid OU model", [f"{path}.A: {exc}"]) from exc


@dataclass(frozen=True)
class EnsembleMeta:
    """Provenance of a path ensemble."""

    master_seed: int
    scheme: str
    small_jump_cut: float
    truncation: float
    x0: tuple[float, ...]
    gaussian_substitution: bool = False

    def to_dict(self) -> dict[str, Any]:
        return {
            "master_seed": self.master_seed,
            "scheme": self.scheme,
            "small_jump_cut": self.small_jump_cut,
            "truncation": self.truncation if np.isfinite(self.truncation) else "inf",
            "x0": list(self.x0),
            "gaussian_substitution": self.gaussian_substitution,
        }


@dataclass(frozen=True, eq=False)
class PathEnsemble:
    """``N`` trajectories recorded on ``time_grid``; ``states`` has shape ``(N, T, d)``."""

    time_grid: np.ndarray
    states: np.ndarray
    meta: EnsembleMeta
    steps: int = field(default=0)

    def __post_init__(self) -> None:
        grid = np.asarray(self.time_grid, dtype=float)
        if grid.ndim != 1 or grid.size == 0 or grid[0] != 0.0:
            raise GridError("time grid must be a non-empty 1-D array starting at 0")
        if np.any(np.diff(grid) <= 0):
            raise GridError("time grid must be strictly increasing")
        if self.states.ndim != 3 or self.states.shape[1] != grid.size:
            raise DimensionError(f"states shape {self.states.shape} does not match grid length {grid.size}")
        object.__setattr__(self, "time_grid", grid)

    @property
    def n_paths(self) -> int:
        return int(self.states.shape[0])

    @property
    def dim(self) -> int:
        return int(self.states.shape[2])

    @property
    def final(self) -> np.ndarray:
        """States at the last grid time, shape ``(N, d)``."""
        return self.states[:, -1, :]

    def at(self, index: int) -> np.ndarray:
        return self.states[:, index, :]

    def rows(self) -> list[list[Any]]:
        """Columnar rows ``path_id, t, x_1..x_d`` in path-major order."""
        out: list[list[Any]] = []
        for pid in range(self.n_paths):
            for j, t in enumerate(self.time_grid):
                out.append([pid, float(t), *map(float, self.states[pid, j])])
        return out

    def export(self, paths: RunPaths, name: str = "paths") -> None:
        """Write the CSV, ``.npy`` and metadata sidecar of this ensemble."""
        header = ["path_id", "t", *[f"x_{i + 1}" for i in range(self.dim)]]
        FileStore.write_csv(paths.ensemble_csv(name), header, self.rows())
        FileStore.write_array(paths.ensemble_array(name), self.states)
        meta = self.meta.to_dict() | {
            "n_paths": self.n_paths,
            "time_grid": self.time_grid.tolist(),
            "internal_steps": self.steps,
        }
        FileStore.write_json(paths.ensemble_meta(name), meta)
