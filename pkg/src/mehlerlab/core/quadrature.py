"""Adaptive quadrature wrappers around :func:`scipy.integrate.quad_vec`.

Integrands may be real or complex, scalar or array valued; complex values are
integrated as stacked real/imaginary parts.  Non-convergence raises
:class:`QuadratureError` with the achieved error estimate.  Callers that fold
the estimate into a verdict budget pass ``strict=False`` and get a logged
warning instead.
"""

from __future__ import annotations

import logging
import warnings
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from mehlerlab.core.constants import QUAD_LIMIT
from mehlerlab.core.exceptions import QuadratureError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class QuadResult:
    """Integral value (scalar or array, real or complex) and its error estimate."""

    value: np.ndarray
    error: float

    def scalar(self) -> complex:
        return complex(np.asarray(self.value).reshape(-1)[0])


def integrate_vec(
    func: Callable[[float], np.ndarray],
    lower: float,
    upper: float,
    *,
    epsabs: float,
    epsrel: float = 0.0,
    points: tuple[float, ...] = (),
    limit: int = QUAD_LIMIT,
    strict: bool = True,
    label: str = "integral",
) -> QuadResult:
    """Integrate an array-valued (possibly complex) function of one variable.

    The returned ``value`` has the shape and dtype kind of ``func`` at an
    interior point; endpoints are never evaluated.
    """
    sample = np.asarray(func(_interior_point(lower, upper)))
    if upper == lower:
        return QuadResult(np.zeros_like(sample), 0.0)

    is_complex = np.iscomplexobj(sample)
    shape = sample.shape

    def real_func(x: float) -> np.ndarray:
        v = np.asarray(func(x))
        if is_complex:
            return np.concatenate([v.real.ravel(), v.imag.ravel()])
        return v.astype(float).ravel()

    inner = tuple(p for p in points if lower < p < upper)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", integrate.IntegrationWarning)
        value, error = integrate.quad_vec(
            real_func,
            lower,
            upper,
            epsabs=epsabs,
            epsrel=epsrel,
            norm="max",
            limit=limit,
            points=inner or None,
        )

    value = np.asarray(value)
    if is_complex:
        half = value.size // 2
        out = (value[:half] + 1j * value[half:]).reshape(shape)
    else:
        out = value.reshape(shape)

    error = float(error)
    if not np.all(np.isfinite(out)):
        raise QuadratureError(f"{label} is not finite on [{lower}, {upper}]", error)
    tolerance = max(epsabs, epsrel * float(np.max(np.abs(out), initial=0.0)))
    converged = not any(issubclass(w.category, integrate.IntegrationWarning) for w in caught)
    if not converged or error > 10.0 * tolerance:
        msg = f"{label} on [{lower}, {upper}] did not converge to {tolerance:.1e}"
        if strict:
            raise QuadratureError(msg, error)
        logger.warning("%s (estimate %.3e)", msg, error)
    return QuadResult(out, error)


def integrate_scalar(
    func: Callable[[float], complex],
    lower: float,
    upper: float,
    *,
    epsabs: float,
    epsrel: float = 0.0,
    strict: bool = True,
    label: str = "integral",
) -> tuple[complex, float]:
    """Scalar convenience wrapper returning ``(value, error)``."""
    res = integrate_vec(
        lambda s: np.asarray([func(s)]),
        lower,
        upper,
        epsabs=epsabs,
        epsrel=epsrel,
        strict=strict,
        label=label,
    )
    return complex(res.value.reshape(-1)[0]), res.error


def _interior_point(lower: float, upper: float) -> float:
    if np.isfinite(lower) and np.isfinite(upper):
        return 0.5 * (lower + upper)
    if np.isfinite(lower):
        return lower + 1.0
    if np.isfinite(upper):
        return upper - 1.0
    return 0.0
