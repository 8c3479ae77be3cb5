"""Time-averaged Fourier modes ``φ_{a,h} = ∫₀^a P_s e^{i⟨·,h⟩} ds``.

``φ_{a,h}(x) = ∫₀^a e^{i⟨x, e^{sA*}h⟩} κ_s(h) ds`` with
``κ_s(h) = exp(-∫₀ˢ ψ(e^{rA*}h) dr)``.  The generator acts on these
functions through the boundary terms ``P_a e_h - e_h``.
"""

from __future__ import annotations

import logging
from functools import cached_property

import numpy as np

from mehlerlab.core.constants import PHI_QUAD_EPSABS
from mehlerlab.core.quadrature import integrate_vec
from mehlerlab.dynamics.flow import (
    ExponentProfile,
    adjoint_flow,
    decay_factor,
    exponent_integral,
    marginal_char,
)
from mehlerlab.generator.engine import apply_L0
from mehlerlab.models.functions import FunctionBounds, SmoothFunction
from mehlerlab.models.ou import OUModel
from mehlerlab.models.types import Vector

logger = logging.getLogger(__name__)


class D1Function:
    """The core function ``φ_{a,h}`` of one model."""

    def __init__(self, model: OUModel, a: float, h: np.ndarray) -> None:
        if a <= 0:
            raise ValueError(f"a must be positive, got {a}")
        h = np.asarray(h, dtype=float).reshape(-1)
        if h.size != model.dim:
            raise ValueError(f"h has dimension {h.size}, model has {model.dim}")
        self.model = model
        self.a = float(a)
        self.h = h

    def __repr__(self) -> str:
        return f"D1Function(a={self.a:g}, h={self.h.tolist()})"

    @cached_property
    def profile(self) -> ExponentProfile:
        return ExponentProfile(self.model, self.h, self.a)

    @cached_property
    def flow_norm_bound(self) -> float:
        """``max_{s≤a} |e^{sA*}h| ≤ e^{a‖A‖}|h|``."""
        return float(np.exp(self.a * np.linalg.norm(self.model.A, 2)) * np.linalg.norm(self.h))

    def _modes(self, s: float, pts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        hs = self.profile.flow(s)[0]
        return hs, complex(self.profile.decay(s)) * np.exp(1j * (pts @ hs))

    def integrate(self, kernel: str, pts: np.ndarray, *, nested: bool = False) -> np.ndarray:
        """``∫₀^a`` of the value (``"value"``), gradient or Hessian kernel at ``pts``.

        With ``nested=True`` the decay factor comes from an adaptive time
        quadrature at every node instead of the Chebyshev profile.
        """

        def integrand(s: float) -> np.ndarray:
            if nested:
                hs = adjoint_flow(self.model, self.h, s)[0]
                k, _ = exponent_integral(self.model, s, self.h)
                modes = complex(decay_factor(k)) * np.exp(1j * (pts @ hs))
            else:
                hs, modes = self._modes(s, pts)
            if kernel == "value":
                return modes
            if kernel == "gradient":
                return 1j * modes[:, None] * hs[None, :]
            return -modes[:, None, None] * np.outer(hs, hs)[None, :, :]

        res = integrate_vec(integrand, 0.0, self.a, epsabs=PHI_QUAD_EPSABS, label=f"phi {kernel}")
        return np.asarray(res.value)


def _points(phi: D1Function, x: Vector) -> tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=float)
    return arr.reshape(-1, phi.model.dim), arr.ndim == 1


def eval_phi(phi: D1Function, x: Vector, *, nested: bool = False) -> complex | np.ndarray:
    """``φ_{a,h}(x)`` for one point ``(d,)`` or a batch ``(m, d)``."""
    pts, single = _points(phi, x)
    out = phi.integrate("value", pts, nested=nested)
    return complex(out[0]) if single else out


def apply_L_phi(phi: D1Function, x: Vector) -> complex | np.ndarray:
    """``Lφ_{a,h}(x) = e^{i⟨e^{aA}x,h⟩}κ_a(h) - e^{i⟨x,h⟩}``."""
    pts, single = _points(phi, x)
    boundary = np.asarray(marginal_char(phi.model, phi.a, pts, phi.h))
    out = boundary - np.exp(1j * (pts @ phi.h))
    return complex(out[0]) if single else out


def phi_as_smooth_function(phi: D1Function, part: str = "real") -> SmoothFunction:
    """Real or imaginary part of ``φ_{a,h}`` with quadrature gradient and Hessian."""
    take = np.real if part == "real" else np.imag
    b = phi.flow_norm_bound

    def value(pts: np.ndarray) -> np.ndarray:
        return take(phi.integrate("value", pts))

    def gradient(pts: np.ndarray) -> np.ndarray:
        return take(phi.integrate("gradient", pts))

    def hessian(pts: np.ndarray) -> np.ndarray:
        return take(phi.integrate("hessian", pts))

    bounds = FunctionBounds(phi.a, phi.a * b, phi.a * b * b)
    return SmoothFunction(value, gradient, hessian, phi.model.dim, bounds, name=f"{part} phi(a={phi.a:g})")


def phi_semigroup_identity(phi: D1Function, t: float, x: Vector) -> float:
    """``|P_t φ_{a,h}(x) - φ_{a+t,h}(x) + φ_{t,h}(x)|``.

    ``P_t φ_{a,h}(x) = ∫₀^a κ_s(h) μ̂_t^x(e^{sA*}h) ds`` by exchanging the
    integrals.
    """
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    if t == 0.0:
        return 0.0
    x = np.asarray(x, dtype=float).reshape(-1)

    def integrand(s: float) -> np.ndarray:
        hs = phi.profile.flow(s)[0]
        return np.array([complex(phi.profile.decay(s)) * complex(marginal_char(phi.model, t, x, hs))])

    res = integrate_vec(integrand, 0.0, phi.a, epsabs=PHI_QUAD_EPSABS, label="P_t phi")
    lhs = complex(np.asarray(res.value).reshape(-1)[0])
    longer = eval_phi(D1Function(phi.model, phi.a + t, phi.h), x)
    shorter = eval_phi(D1Function(phi.model, t, phi.h), x)
    residual = abs(lhs - complex(longer) + complex(shorter))
    logger.debug("phi identity residual %.3e for %r, t=%g", residual, phi, t)
    return float(residual)


def phi_generator_gap(phi: D1Function, x: Vector, *, target: float = 1e-8) -> tuple[float, float]:
    """``|Lφ(x) - L₀φ(x)|`` with ``L₀`` by quadrature on both parts; returns the gap and its error estimate."""
    x = np.asarray(x, dtype=float).reshape(-1)
    closed = complex(apply_L_phi(phi, x))
    re, re_err = apply_L0(phi.model, phi_as_smooth_function(phi, "real"), x, target=target, strict=False)
    im, im_err = apply_L0(phi.model, phi_as_smooth_function(phi, "imag"), x, target=target, strict=False)
    return abs(closed - complex(re, im)), re_err + im_err
