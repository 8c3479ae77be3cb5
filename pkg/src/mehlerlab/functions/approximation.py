"""Constructive approximation of ``C²_b`` functions by trig polynomials.

For a function ``f`` and integers ``n, m``:

1. mollify ``f̃_n = f * ρ_n`` with ``ρ_n(x) ∝ ρ(nx)`` (numerical convolution
   on a tensor grid);
2. cut off ``f*_n(x) = f̃_n(x) ρ(x/n)``, supported in ``|x| < 3n/2``;
3. periodise with period ``4n`` and expand in Fourier series on
   ``[-2n, 2n]^d``;
4. keep the integer frequencies ``|h|₂ ≤ m``:
   ``f_nm(x) = Σ c_h e^{iπ⟨x,h⟩/(2n)}``.

``ρ`` is radial, equal to 1 on ``|x| ≤ 1`` and 0 on ``|x| ≥ 3/2`` with a
``C^∞`` smooth-step transition.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import fft

from mehlerlab.core.constants import APPROX_OVERSAMPLE, MAX_APPROX_DIM, MAX_APPROX_GRID_POINTS
from mehlerlab.core.exceptions import ApproximationError
from mehlerlab.models.functions import SmoothFunction, TrigPolynomial

logger = logging.getLogger(__name__)

_PLATEAU = 1.0
_TRANSITION = 0.5


def smooth_step(t: np.ndarray) -> np.ndarray:
    """``C^∞`` step: 0 for ``t ≤ 0``, 1 for ``t ≥ 1``."""
    t = np.asarray(t, dtype=float)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        a = np.where(t > 0, np.exp(-1.0 / np.where(t > 0, t, 1.0)), 0.0)
        b = np.where(t < 1, np.exp(-1.0 / np.where(t < 1, 1.0 - t, 1.0)), 0.0)
    return a / (a + b)


def cutoff_profile(r: np.ndarray) -> np.ndarray:
    """Radial profile of ``ρ``: 1 on ``r ≤ 1``, 0 on ``r ≥ 3/2``."""
    return 1.0 - smooth_step((np.asarray(r, dtype=float) - _PLATEAU) / _TRANSITION)


@lru_cache(maxsize=1)
def cutoff_derivative_bounds() -> tuple[float, float]:
    """``(‖Dρ‖₀, ‖D²ρ‖₀)`` of the radial cutoff, from a dense scan."""
    r = np.linspace(_PLATEAU, _PLATEAU + _TRANSITION, 200_001)
    step = r[1] - r[0]
    prof = cutoff_profile(r)
    d1 = np.gradient(prof, step)
    d2 = np.gradient(d1, step)
    c1 = float(np.max(np.abs(d1)))
    c2 = float(max(np.max(np.abs(d2)), np.max(np.abs(d1) / r)))
    return c1, c2


def uniform_bound(f: SmoothFunction, n: int) -> float:
    """``M = S(1 + 2c₁/n + c₂/n²)`` with ``S`` the sum of the declared norms of ``f``."""
    c1, c2 = cutoff_derivative_bounds()
    return f.bounds.total * (1.0 + 2.0 * c1 / n + c2 / n**2)


def grid_size(n: int, m: int, dim: int, oversample: int = APPROX_OVERSAMPLE) -> int:
    """Points per axis: a power of two with spacing at most ``1/(n·oversample)`` and ``≥ 4m``."""
    need = max(4 * n * n * oversample, 4 * m)
    size = 1 << int(np.ceil(np.log2(need)))
    if size**dim > MAX_APPROX_GRID_POINTS:
        raise ApproximationError(f"grid of {size}^{dim} points exceeds {MAX_APPROX_GRID_POINTS}")
    return size


@dataclass(frozen=True, eq=False)
class Approximation:
    """Result of :func:`approximate`: the polynomial plus its grid data."""

    polynomial: TrigPolynomial
    n: int
    m: int
    axis: np.ndarray
    periodized: np.ndarray
    values: np.ndarray
    gradient: np.ndarray
    hessian: np.ndarray
    bound: float

    @property
    def dim(self) -> int:
        return self.polynomial.dim

    def norm_sum(self) -> float:
        """``‖f_nm‖₀ + ‖Df_nm‖₀ + ‖D²f_nm‖₀`` on the grid."""
        sup = float(np.max(np.abs(self.values)))
        grad = float(np.max(np.linalg.norm(self.gradient, axis=-1)))
        if self.dim == 1:
            hess = float(np.max(np.abs(self.hessian[..., 0, 0])))
        else:
            hess = float(np.max(np.abs(np.linalg.eigvalsh(self.hessian))))
        return sup + grad + hess

    def truncation_error(self) -> float:
        """``sup |f_nm - f*_n|`` over the grid."""
        return float(np.max(np.abs(self.values - self.periodized)))


def _frequency_grid(size: int, dim: int) -> list[np.ndarray]:
    k = fft.fftfreq(size, 1.0 / size)
    return list(np.meshgrid(*([k] * dim), indexing="ij"))


def approximate(f: SmoothFunction, n: int, m: int, *, oversample: int = APPROX_OVERSAMPLE) -> Approximation:
    """Build ``f_nm`` together with its grid values and derivatives."""
    d = f.dim
    if d > MAX_APPROX_DIM:
        raise ApproximationError(f"approximation is limited to d <= {MAX_APPROX_DIM}, got d={d}")
    if n < 1 or m < 1:
        raise ApproximationError(f"n and m must be positive, got n={n}, m={m}")
    size = grid_size(n, m, d, oversample)
    if m >= size // 2:
        raise ApproximationError(f"grid of {size} points per axis cannot resolve m={m}")

    period = 4.0 * n
    spacing = period / size
    axis = -2.0 * n + spacing * np.arange(size)
    mesh = np.meshgrid(*([axis] * d), indexing="ij")
    points = np.stack([g.ravel() for g in mesh], axis=1)
    radius = np.linalg.norm(points, axis=1).reshape((size,) * d)

    samples = np.asarray(f.value(points), dtype=float).reshape((size,) * d)

    offsets = fft.fftfreq(size, 1.0 / size) * spacing
    off_mesh = np.meshgrid(*([offsets] * d), indexing="ij")
    off_radius = np.sqrt(sum(o * o for o in off_mesh))
    kernel = cutoff_profile(n * off_radius)
    if kernel.sum() <= 0:
        raise ApproximationError("mollifier support is below the grid resolution")
    kernel = kernel / kernel.sum()

    mollified = fft.ifftn(fft.fftn(samples) * fft.fftn(kernel)).real
    periodized = mollified * cutoff_profile(radius / n)

    ks = _frequency_grid(size, d)
    sign = np.where(sum(ks) % 2 == 0, 1.0, -1.0)
    coeffs = sign * fft.fftn(periodized) / size**d
    norm2 = sum(k * k for k in ks)
    keep = norm2 <= m * m
    kept = np.where(keep, coeffs, 0.0)

    # grid evaluation of the truncated series (and derivatives) by inverse FFT
    omega = [np.pi * k / (2.0 * n) for k in ks]
    unsign = sign * size**d
    values = fft.ifftn(kept * unsign).real
    grad = np.stack([fft.ifftn(1j * w * kept * unsign).real for w in omega], axis=-1)
    hess = np.empty((size,) * d + (d, d))
    for i in range(d):
        for j in range(i, d):
            hij = fft.ifftn(-omega[i] * omega[j] * kept * unsign).real
            hess[..., i, j] = hij
            hess[..., j, i] = hij

    freq = np.stack([k[keep] for k in ks], axis=1)
    poly = TrigPolynomial(coeffs[keep], np.pi * freq / (2.0 * n))
    logger.debug("approximation n=%d m=%d: %d terms on %d^%d grid", n, m, poly.n_terms, size, d)
    return Approximation(poly, n, m, axis, periodized, values, grad, hess, uniform_bound(f, n))


def mollify_periodize(f: SmoothFunction, n: int, m: int) -> TrigPolynomial:
    """The trig polynomial ``f_nm``."""
    return approximate(f, n, m).polynomial
