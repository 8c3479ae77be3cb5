"""Deterministic flow and exact marginal characteristic function.

The marginal law ``μ_t^x`` of ``X_t^x`` has characteristic function

    μ̂_t^x(h) = e^{i⟨e^{tA*}h, x⟩} · exp(-∫₀ᵗ ψ(e^{sA*}h) ds).

:func:`marginal_char` evaluates the exponent integral by adaptive
quadrature; :class:`ExponentProfile` represents ``s ↦ ψ(e^{sA*}h)`` as a
Chebyshev series so the exponent and the decay factor can be read at many
times without re-running quadrature.
"""

from __future__ import annotations

import logging

import numpy as np
from numpy.polynomial import Chebyshev
from scipy import linalg

from mehlerlab.core.constants import (
    CHEBYSHEV_MAX_DEGREE,
    CHEBYSHEV_START_DEGREE,
    CHEBYSHEV_TAIL_TOLERANCE,
    TIME_QUAD_EPSABS,
)
from mehlerlab.core.quadrature import integrate_scalar, integrate_vec
from mehlerlab.levy.exponent import char_exponent
from mehlerlab.models.ou import OUModel

logger = logging.getLogger(__name__)


def _is_diagonal(A: np.ndarray) -> bool:
    return not np.any(A - np.diag(np.diag(A)))


def matrix_exp(A: np.ndarray, t: float) -> np.ndarray:
    """``e^{tA}`` (scaling and squaring with Padé via :func:`scipy.linalg.expm`)."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    if t == 0.0:
        return np.eye(A.shape[0])
    if _is_diagonal(A):
        return np.diag(np.exp(t * np.diag(A)))
    return np.asarray(linalg.expm(t * A))


def matrix_exp_batch(A: np.ndarray, times: np.ndarray) -> np.ndarray:
    """``e^{t_k A}`` for every ``t_k``; shape ``(n, d, d)``."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    times = np.asarray(times, dtype=float).reshape(-1)
    if _is_diagonal(A):
        diag = np.exp(times[:, None] * np.diag(A)[None, :])
        out = np.zeros((times.size, A.shape[0], A.shape[0]))
        idx = np.arange(A.shape[0])
        out[:, idx, idx] = diag
        return out
    return np.asarray(linalg.expm(times[:, None, None] * A[None, :, :]))


def apply_flow(A: np.ndarray, times: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """``e^{t_k A} v_k`` row by row; ``vectors`` has shape ``(n, d)``."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    times = np.asarray(times, dtype=float).reshape(-1)
    if _is_diagonal(A):
        return np.exp(times[:, None] * np.diag(A)[None, :]) * vectors
    return np.einsum("nij,nj->ni", matrix_exp_batch(A, times), vectors)


def adjoint_flow(model: OUModel, h: np.ndarray, times: np.ndarray) -> np.ndarray:
    """``e^{sA*}h`` for every ``s`` in *times*; shape ``(n, d)``."""
    times = np.atleast_1d(np.asarray(times, dtype=float))
    h = np.asarray(h, dtype=float)
    return apply_flow(model.A.T, times, np.broadcast_to(h, (times.size, h.size)))


def exponent_integral(
    model: OUModel,
    t: float,
    h: np.ndarray,
    *,
    epsabs: float = TIME_QUAD_EPSABS,
    strict: bool = True,
) -> tuple[complex, float]:
    """``(∫₀ᵗ ψ(e^{sA*}h) ds, error_estimate)``."""
    h = np.asarray(h, dtype=float)
    if t == 0.0 or not np.any(h):
        return 0.0j, 0.0
    if not np.any(model.A):
        return t * complex(char_exponent(model.triplet, h)), 0.0

    def integrand(s: float) -> complex:
        return complex(char_exponent(model.triplet, matrix_exp(model.A.T, s) @ h))

    return integrate_scalar(integrand, 0.0, t, epsabs=epsabs, strict=strict, label="time integral of psi")


def exponent_integrals(
    model: OUModel,
    t: float,
    frequencies: np.ndarray,
    *,
    epsabs: float = TIME_QUAD_EPSABS,
    strict: bool = True,
) -> tuple[np.ndarray, float]:
    """:func:`exponent_integral` for every row of ``frequencies`` in one vector quadrature."""
    freqs = np.atleast_2d(np.asarray(frequencies, dtype=float))
    if t == 0.0:
        return np.zeros(freqs.shape[0], dtype=complex), 0.0
    if not np.any(model.A):
        return t * np.asarray(char_exponent(model.triplet, freqs)), 0.0

    def integrand(s: float) -> np.ndarray:
        return np.asarray(char_exponent(model.triplet, freqs @ matrix_exp(model.A, s)))

    res = integrate_vec(integrand, 0.0, t, epsabs=epsabs, strict=strict, label="time integrals of psi")
    return np.asarray(res.value), res.error


def decay_factor(exponent: complex | np.ndarray) -> complex | np.ndarray:
    """``exp(-K)`` with ``Re K`` clamped at 0 so the modulus never exceeds 1."""
    k = np.asarray(exponent)
    clamped = np.maximum(k.real, 0.0) + 1j * k.imag
    out = np.exp(-clamped)
    return complex(out) if out.ndim == 0 else out


def marginal_char(
    model: OUModel,
    t: float,
    x: np.ndarray,
    h: np.ndarray,
    *,
    epsabs: float = TIME_QUAD_EPSABS,
    strict: bool = True,
) -> complex | np.ndarray:
    """Characteristic function of ``μ_t^x`` at ``h``.

    ``x`` may be a single point ``(d,)`` or a batch ``(m, d)``; the exponent
    integral does not depend on ``x`` and is computed once.
    """
    x = np.asarray(x, dtype=float)
    h = np.asarray(h, dtype=float)
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    flowed = matrix_exp(model.A.T, t) @ h
    phase = np.exp(1j * (x @ flowed))
    if t == 0.0:
        return complex(phase) if np.ndim(phase) == 0 else phase
    k, _ = exponent_integral(model, t, h, epsabs=epsabs, strict=strict)
    out = phase * decay_factor(k)
    return complex(out) if np.ndim(out) == 0 else out


def chapman_kolmogorov_residual(model: OUModel, s: float, t: float, h: np.ndarray) -> float:
    """``|μ̂_{t+s}(h) - μ̂_s(h) μ̂_t(e^{sA*}h)|`` for the law started at 0."""
    origin = np.zeros(model.dim)
    h = np.asarray(h, dtype=float)
    lhs = marginal_char(model, t + s, origin, h)
    rhs = marginal_char(model, s, origin, h) * marginal_char(model, t, origin, matrix_exp(model.A.T, s) @ h)
    return float(abs(lhs - rhs))


class ExponentProfile:
    """Chebyshev representation of ``s ↦ ψ(e^{sA*}h)`` on ``[0, horizon]``.

    The degree doubles from ``CHEBYSHEV_START_DEGREE`` until the trailing
    coefficients fall below ``CHEBYSHEV_TAIL_TOLERANCE`` relative to the
    leading one (or ``CHEBYSHEV_MAX_DEGREE`` is reached).
    """

    def __init__(self, model: OUModel, h: np.ndarray, horizon: float) -> None:
        if horizon <= 0:
            raise ValueError(f"horizon must be positive, got {horizon}")
        self.model = model
        self.h = np.asarray(h, dtype=float)
        self.horizon = float(horizon)
        self.converged = False
        self._fit, self.degree = self._build()
        self._integral = self._fit.integ(lbnd=0.0)

    def _psi_along_flow(self, s: np.ndarray) -> np.ndarray:
        return np.asarray(char_exponent(self.model.triplet, adjoint_flow(self.model, self.h, s)))

    def _build(self) -> tuple[Chebyshev, int]:
        domain = [0.0, self.horizon]
        degree = CHEBYSHEV_START_DEGREE
        while True:
            fit = Chebyshev.interpolate(self._psi_along_flow, degree, domain=domain)
            scale = max(float(np.max(np.abs(fit.coef))), 1e-300)
            tail = float(np.max(np.abs(fit.coef[-4:])))
            if tail <= CHEBYSHEV_TAIL_TOLERANCE * scale or not np.any(self.h):
                self.converged = True
                return fit, degree
            if degree >= CHEBYSHEV_MAX_DEGREE:
                logger.warning(
                    "exponent profile for h=%s did not resolve to %.0e (tail %.2e at degree %d)",
                    self.h.tolist(),
                    CHEBYSHEV_TAIL_TOLERANCE,
                    tail / scale,
                    degree,
                )
                return fit, degree
            degree *= 2

    def psi(self, s: np.ndarray | float) -> np.ndarray:
        """``ψ(e^{sA*}h)``."""
        return np.asarray(self._fit(np.asarray(s, dtype=float)))

    def exponent(self, s: np.ndarray | float) -> np.ndarray:
        """``K(s) = ∫₀ˢ ψ(e^{rA*}h) dr``."""
        s = np.asarray(s, dtype=float)
        if np.any(s < 0) or np.any(s > self.horizon * (1 + 1e-12)):
            raise ValueError(f"times must lie in [0, {self.horizon}]")
        return np.asarray(self._integral(s))

    def decay(self, s: np.ndarray | float) -> np.ndarray:
        """``κ(s) = exp(-K(s))``."""
        return np.asarray(decay_factor(self.exponent(s)))

    def flow(self, s: np.ndarray | float) -> np.ndarray:
        """``e^{sA*}h``, shape ``(n, d)``."""
        return adjoint_flow(self.model, self.h, np.atleast_1d(np.asarray(s, dtype=float)))
