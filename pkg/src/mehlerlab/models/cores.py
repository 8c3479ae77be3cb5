"""Empirical marginal laws of a path ensemble."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from mehlerlab.core.exceptions import DimensionError
from mehlerlab.models.ou import PathEnsemble

MASS_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class EmpiricalMeasure:
    """Weighted atoms ``Σ_i w_i δ_{x_i}`` observed at time ``t``.

    Weights default to ``1/N``; they must be nonnegative and sum to one.
    """

    atoms: np.ndarray
    t: float
    weights: np.ndarray = field(default_factory=lambda: np.empty(0))

    def __post_init__(self) -> None:
        atoms = np.asarray(self.atoms, dtype=float)
        if atoms.ndim != 2 or atoms.shape[0] == 0:
            raise DimensionError(f"atoms must be a non-empty (N, d) array, got shape {atoms.shape}")
        w = np.asarray(self.weights, dtype=float)
        if w.size == 0:
            w = np.full(atoms.shape[0], 1.0 / atoms.shape[0])
        if w.shape != (atoms.shape[0],):
            raise DimensionError(f"{w.size} weights for {atoms.shape[0]} atoms")
        if np.any(w < 0):
            raise ValueError("empirical weights must be nonnegative")
        if abs(float(w.sum()) - 1.0) > MASS_TOLERANCE:
            raise ValueError(f"total mass is {w.sum()!r}, expected 1")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "weights", w)

    @classmethod
    def from_ensemble(cls, ensemble: PathEnsemble, index: int) -> EmpiricalMeasure:
        return cls(ensemble.at(index), float(ensemble.time_grid[index]))

    @property
    def size(self) -> int:
        return int(self.atoms.shape[0])

    @property
    def dim(self) -> int:
        return int(self.atoms.shape[1])

    @property
    def total_mass(self) -> float:
        return float(self.weights.sum())

    def integrate(self, values: np.ndarray) -> complex | float:
        """``∫ f dγ`` given ``f`` evaluated at the atoms."""
        out = self.weights @ np.asarray(values)
        return complex(out) if np.iscomplexobj(out) else float(out)
