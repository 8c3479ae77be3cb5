"""Lévy triplet ``(Q, a, ν)``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from mehlerlab.core.constants import PSD_TOLERANCE, SYMMETRY_TOLERANCE
from mehlerlab.core.exceptions import ConfigError, DimensionError, LevyMeasureError
from mehlerlab.levy.measures import LevyMeasure, NoJumps, measure_from_dict


@dataclass(frozen=True, eq=False)
class LevyTriplet:
    """Characteristic data of a Lévy process on ``R^d``.

    ``Q`` is symmetrised on construction and eigenvalues in
    ``[-PSD_TOLERANCE, 0)`` are clamped to zero; anything more negative is
    rejected.
    """

    Q: np.ndarray
    a: np.ndarray
    nu: LevyMeasure

    def __post_init__(self) -> None:
        q = np.atleast_2d(np.asarray(self.Q, dtype=float))
        a = np.atleast_1d(np.asarray(self.a, dtype=float))
        d = a.shape[0]
        if q.shape != (d, d):
            raise DimensionError(f"Q has shape {q.shape}, drift has dimension {d}")
        if self.nu.dim != d:
            raise DimensionError(f"Levy measure has dimension {self.nu.dim}, drift has dimension {d}")
        if np.max(np.abs(q - q.T), initial=0.0) > SYMMETRY_TOLERANCE:
            raise LevyMeasureError("Q is not symmetric")
        q = 0.5 * (q + q.T)
        eigval, eigvec = np.linalg.eigh(q)
        if eigval.min() < -PSD_TOLERANCE:
            raise LevyMeasureError(f"Q has negative eigenvalue {eigval.min():.3e}")
        if eigval.min() < 0:
            q = (eigvec * np.clip(eigval, 0.0, None)) @ eigvec.T
        q.setflags(write=False)
        a.setflags(write=False)
        object.__setattr__(self, "Q", q)
        object.__setattr__(self, "a", a)

    @property
    def dim(self) -> int:
        return int(self.a.shape[0])

    @classmethod
    def gaussian(cls, Q: Any, a: Any = None) -> LevyTriplet:
        """Triplet without jumps."""
        q = np.atleast_2d(np.asarray(Q, dtype=float))
        drift = np.zeros(q.shape[0]) if a is None else a
        return cls(q, drift, NoJumps(q.shape[0]))

    def with_measure(self, nu: LevyMeasure) -> LevyTriplet:
        return LevyTriplet(self.Q, self.a, nu)

    def to_dict(self) -> dict[str, Any]:
        return {"Q": self.Q.tolist(), "a": self.a.tolist(), "nu": self.nu.to_dict()}

    @classmethod
    def from_dict(cls, data: Any, path: str = "triplet") -> LevyTriplet:
        """Parse the JSON form; problems are reported with their field path."""
        if not isinstance(data, dict):
            raise ConfigError("invalid Levy triplet", [f"{path}: expected an object"])
        problems: list[str] = []
        q = _matrix(data.get("Q"), f"{path}.Q", problems)
        a = _vector(data.get("a"), f"{path}.a", problems)
        nu: LevyMeasure | None = None
        if "nu" in data and data["nu"] is not None:
            try:
                nu = measure_from_dict(data["nu"], f"{path}.nu")
            except ConfigError as exc:
                problems.extend(exc.problems)
        if problems or q is None or a is None:
            raise ConfigError("invalid Levy triplet", problems)
        if nu is None:
            nu = NoJumps(len(a))
        try:
            return cls(q, a, nu)
        except (DimensionError, LevyMeasureError) as exc:
            raise ConfigError("invalid Levy triplet", [f"{path}: {exc}"]) from exc


def _matrix(value: Any, path: str, problems: list[str]) -> np.ndarray | None:
    if not isinstance(value, list) or not value:
        problems.append(f"{path}: expected a square matrix (list of rows)")
        return None
    try:
        arr = np.asarray(value, dtype=float)
    except (TypeError, ValueError):
        problems.append(f"{path}: entries must be numbers")
        return None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        problems.append(f"{path}: expected a square matrix, got shape {arr.shape}")
        return None
    return arr


def _vector(value: Any, path: str, problems: list[str]) -> np.ndarray | None:
    if not isinstance(value, list) or not value:
        problems.append(f"{path}: expected a non-empty list of numbers")
        return None
    try:
        arr = np.asarray(value, dtype=float)
    except (TypeError, ValueError):
        problems.append(f"{path}: entries must be numbers")
        return None
    if arr.ndim != 1:
        problems.append(f"{path}: expected a flat list")
        return None
    return arr
