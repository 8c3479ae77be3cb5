"""mehlerlab exception hierarchy.

All library-specific exceptions inherit from :class:`MehlerLabError` so that
the experiment runner can map them onto exit codes without catching
programming errors.
"""

from __future__ import annotations


class MehlerLabError(Exception):
    """Base exception for all mehlerlab errors."""


# -- Configuration ----------------------------------------------------------


class ConfigError(MehlerLabError):
    """Invalid or missing experiment configuration."""

    def __init__(self, message: str, problems: list[str] | None = None) -> None:
        self.problems: list[str] = list(problems or [])
        if self.problems:
            message = message + "\n  " + "\n  ".join(self.problems)
        super().__init__(message)


class UnknownExperimentError(ConfigError):
    """Experiment name not in the registry."""


# -- Model data -------------------------------------------------------------


class DimensionError(MehlerLabError):
    """Vectors, matrices or measures with inconsistent dimensions."""


class LevyMeasureError(MehlerLabError):
    """Lévy measure or triplet violates its integrability conditions."""


class TraceClassError(MehlerLabError):
    """Spectral covariance sequence is not summable."""


class GridError(MehlerLabError):
    """Invalid time grid for path simulation."""


# -- Numerics ---------------------------------------------------------------


class QuadratureError(MehlerLabError):
    """Adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, message: str, error_estimate: float = float("nan")) -> None:
        self.error_estimate = error_estimate
        super().__init__(f"{message} (achieved error estimate {error_estimate:.3e})")


class SamplingError(MehlerLabError):
    """No sampler available for a measure variant, or sampling failed."""

    def __init__(self, message: str, variant: str = "") -> None:
        self.variant = variant
        super().__init__(f"{variant}: {message}" if variant else message)


class ApproximationError(MehlerLabError):
    """Approximation construction cannot be carried out on the requested grid."""
