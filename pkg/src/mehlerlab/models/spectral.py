"""Diagonal infinite-dimensional OU data and its sequence recipes.

A :class:`SpectralModel` fixes, coordinate by coordinate, the eigenvalues of
``A``, the diagonal of a trace-class ``Q``, the drift ``a`` and a per-axis
jump measure whose intensity decays like ``k^{-s}``.  Truncation to the
first ``d`` coordinates is done by :func:`mehlerlab.spectral.galerkin_project`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Any

import numpy as np
from scipy import special

from mehlerlab.core.constants import TRACE_CHECK_DIMENSION, TRACE_CHECK_TOLERANCE
from mehlerlab.core.exceptions import ConfigError, LevyMeasureError, TraceClassError
from mehlerlab.levy.measures import (
    CompoundPoisson,
    FiniteAtomic,
    IsotropicStableRadial,
    LevyMeasure,
    NoJumps,
    TemperedStable,
    measure_from_dict,
)

FAMILIES = ("power", "geometric", "constant", "zero", "explicit")


def _prefixed(path: str, errors: list[str]) -> list[str]:
    return [f"{path}.{e}" if ":" in e else f"{path}: {e}" for e in errors]


@dataclass(frozen=True)
class SequenceRecipe:
    """Named sequence family indexed from ``k = 1``.

    Parameters
    ----------
    family:
        ``"power"`` (``scale · k^exponent``), ``"geometric"``
        (``scale · ratio^{k-1}``), ``"constant"``, ``"zero"`` or
        ``"explicit"`` (``values`` followed by zeros).
    """

    family: str
    scale: float = 1.0
    exponent: float = 0.0
    ratio: float = 0.0
    values: tuple[float, ...] = ()

    def validate(self) -> list[str]:
        errors: list[str] = []
        if self.family not in FAMILIES:
            errors.append(f"family: must be one of {', '.join(FAMILIES)}")
        if not all(math.isfinite(v) for v in (self.scale, self.exponent, self.ratio, *self.values)):
            errors.append("parameters must be finite")
        if self.family == "explicit" and not self.values:
            errors.append("values: explicit sequences need at least one value")
        return errors

    def terms(self, d: int) -> np.ndarray:
        """The first ``d`` terms."""
        k = np.arange(1, d + 1, dtype=float)
        if self.family == "power":
            return self.scale * k**self.exponent
        if self.family == "geometric":
            return self.scale * self.ratio ** (k - 1.0)
        if self.family == "constant":
            return np.full(d, self.scale)
        if self.family == "explicit":
            out = np.zeros(d)
            n = min(d, len(self.values))
            out[:n] = self.values[:n]
            return out
        return np.zeros(d)

    def term(self, k: int) -> float:
        return float(self.terms(k)[-1])

    @property
    def summable(self) -> bool:
        """Whether ``Σ|s_k|`` converges for this family."""
        if self.family in ("zero", "explicit"):
            return True
        if self.scale == 0.0:
            return True
        if self.family == "power":
            return self.exponent < -1.0
        if self.family == "geometric":
            return abs(self.ratio) < 1.0
        return False

    def limit(self) -> float:
        """Analytic value of ``Σ_k s_k`` (``inf`` if not summable)."""
        if not self.summable:
            return math.inf
        if self.family == "power":
            return 0.0 if self.scale == 0.0 else self.scale * float(special.zeta(-self.exponent))
        if self.family == "geometric":
            return self.scale / (1.0 - self.ratio)
        if self.family == "explicit":
            return float(sum(self.values))
        return 0.0

    @property
    def bounded_above(self) -> bool:
        if self.family == "power":
            return self.scale <= 0.0 or self.exponent <= 0.0
        if self.family == "geometric":
            return self.scale <= 0.0 or abs(self.ratio) <= 1.0
        return True

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"family": self.family}
        if self.family in ("power", "geometric", "constant"):
            out["scale"] = self.scale
        if self.family == "power":
            out["exponent"] = self.exponent
        if self.family == "geometric":
            out["ratio"] = self.ratio
        if self.family == "explicit":
            out["values"] = list(self.values)
        return out

    @classmethod
    def from_dict(cls, data: Any, path: str) -> SequenceRecipe:
        if not isinstance(data, dict):
            raise ConfigError("invalid sequence recipe", [f"{path}: expected an object with a 'family' tag"])
        problems: list[str] = []
        fields: dict[str, Any] = {"family": data.get("family")}
        for key in ("scale", "exponent", "ratio"):
            if key in data:
                if not isinstance(data[key], (int, float)) or isinstance(data[key], bool):
                    problems.append(f"{path}.{key}: expected a number")
                else:
                    fields[key] = float(data[key])
        if "values" in data:
            raw = data["values"]
            if not isinstance(raw, list) or not all(isinstance(v, (int, float)) for v in raw):
                problems.append(f"{path}.values: expected a list of numbers")
            else:
                fields["values"] = tuple(float(v) for v in raw)
        if not isinstance(fields["family"], str):
            problems.append(f"{path}.family: expected a string")
        if problems:
            raise ConfigError("invalid sequence recipe", problems)
        recipe = cls(**fields)
        errors = recipe.validate()
        if errors:
            raise ConfigError("invalid sequence recipe", _prefixed(path, errors))
        return recipe


def scaled_measure(nu: LevyMeasure, factor: float) -> LevyMeasure:
    """``factor · ν`` for the one-dimensional variants used as per-axis noise."""
    if factor <= 0.0 or isinstance(nu, NoJumps):
        return NoJumps(nu.dim)
    if isinstance(nu, CompoundPoisson):
        return replace(nu, rate=nu.rate * factor)
    if isinstance(nu, TemperedStable):
        return replace(nu, c_plus=nu.c_plus * factor, c_minus=nu.c_minus * factor)
    if isinstance(nu, IsotropicStableRadial):
        return replace(nu, c=nu.c * factor)
    if isinstance(nu, FiniteAtomic):
        return replace(nu, weights=tuple(w * factor for w in nu.weights))
    raise LevyMeasureError(f"cannot rescale a {nu.kind} measure")


@dataclass(frozen=True)
class NoiseRecipe:
    """Coordinate ``k`` carries ``k^{-decay} · base`` along its axis."""

    base: LevyMeasure
    decay: float

    def validate(self) -> list[str]:
        errors: list[str] = []
        if self.base.dim != 1:
            errors.append("base: per-axis noise must be one-dimensional")
        if not self.decay > 1.0:
            errors.append("decay: must exceed 1 so that the intensities are summable")
        return errors

    def axis_measure(self, k: int) -> LevyMeasure:
        return scaled_measure(self.base, float(k) ** (-self.decay))

    def to_dict(self) -> dict[str, Any]:
        return {"base": self.base.to_dict(), "decay": self.decay}


@dataclass(frozen=True)
class SpectralModel:
    """Diagonal data ``(λ_k, q_k, a_k, ν_k)`` of an infinite-dimensional OU model.

    Construction enforces the trace-class gate on ``q`` (raising
    :class:`TraceClassError`) and that the eigenvalues are bounded above.
    """

    eigen: SequenceRecipe
    q: SequenceRecipe
    a: SequenceRecipe = SequenceRecipe("zero")
    noise: NoiseRecipe | None = None

    def __post_init__(self) -> None:
        problems = _prefixed("eigen", self.eigen.validate())
        problems += _prefixed("q", self.q.validate())
        problems += _prefixed("a", self.a.validate())
        if self.noise is not None:
            problems += _prefixed("noise", self.noise.validate())
        if not self.eigen.bounded_above:
            problems.append("eigen: eigenvalues must be bounded above")
        if problems:
            raise ConfigError("invalid spectral model", problems)
        self._trace_gate()

    def _trace_gate(self) -> None:
        terms = self.q.terms(TRACE_CHECK_DIMENSION)
        if np.any(terms < 0):
            raise TraceClassError("q: covariance eigenvalues must be nonnegative")
        if not self.q.summable:
            raise TraceClassError(f"q: the {self.q.family} sequence {self.q.to_dict()} is not summable (Q is not trace class)")
        limit = self.q.limit()
        partial = float(terms.sum())
        if partial > limit * (1.0 + TRACE_CHECK_TOLERANCE) + TRACE_CHECK_TOLERANCE:
            raise TraceClassError(
                f"q: partial sum {partial!r} at d={TRACE_CHECK_DIMENSION} exceeds the declared trace {limit!r}"
            )

    @property
    def trace(self) -> float:
        return self.q.limit()

    def to_dict(self) -> dict[str, Any]:
        return {
            "eigen": self.eigen.to_dict(),
            "q": self.q.to_dict(),
            "a": self.a.to_dict(),
            "noise": None if self.noise is None else self.noise.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: Any, path: str = "spectral") -> SpectralModel:
        if not isinstance(data, dict):
            raise ConfigError("invalid spectral model", [f"{path}: expected an object"])
        problems: list[str] = []
        recipes: dict[str, SequenceRecipe] = {}
        for key in ("eigen", "q", "a"):
            if key not in data:
                if key != "a":
                    problems.append(f"{path}.{key}: required")
                continue
            try:
                recipes[key] = SequenceRecipe.from_dict(data[key], f"{path}.{key}")
            except ConfigError as exc:
                problems.extend(exc.problems)
        noise = None
        raw_noise = data.get("noise")
        if raw_noise is not None:
            if not isinstance(raw_noise, dict):
                problems.append(f"{path}.noise: expected an object")
            else:
                try:
                    base = measure_from_dict(raw_noise.get("base"), f"{path}.noise.base")
                    decay = raw_noise.get("decay", 2.0)
                    if not isinstance(decay, (int, float)):
                        problems.append(f"{path}.noise.decay: expected a number")
                    else:
                        noise = NoiseRecipe(base, float(decay))
                except ConfigError as exc:
                    problems.extend(exc.problems)
        if problems:
            raise ConfigError("invalid spectral model", problems)
        try:
            return cls(recipes["eigen"], recipes["q"], recipes.get("a", SequenceRecipe("zero")), noise)
        except ConfigError as exc:
            raise ConfigError("invalid spectral model", [f"{path}.{p}" for p in exc.problems]) from exc
