"""Polar decomposition of Lévy measures with a density.

A density part of a Lévy measure is written as ``ν(dy) = Σ_j w_j ρ_j(r) dr``
along a fixed set of unit directions ``ω_j`` (``y = r ω_j``).  ``ρ_j`` already
contains the Jacobian ``r^{d-1}``.  One-dimensional measures use the two
directions ``±1``; full-dimensional densities use a sphere rule.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import gamma

from mehlerlab.core.constants import (
    ANGULAR_NODES_2D,
    AZIMUTH_NODES_3D,
    LEVY_QUAD_EPSABS,
    LEVY_QUAD_EPSREL,
    POLAR_NODES_3D,
)
from mehlerlab.core.exceptions import DimensionError
from mehlerlab.core.quadrature import QuadResult, integrate_vec


def sphere_area(dim: int) -> float:
    """Surface measure of the unit sphere in ``R^dim`` (2 for ``dim = 1``)."""
    return float(2.0 * np.pi ** (dim / 2.0) / gamma(dim / 2.0))


@lru_cache(maxsize=8)
def sphere_rule(dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Directions and weights integrating functions on the unit sphere.

    Weights sum to :func:`sphere_area`.  ``d = 2`` uses the periodic
    trapezoid rule, ``d = 3`` a Gauss–Legendre × trapezoid product rule.
    """
    if dim == 1:
        return np.array([[1.0], [-1.0]]), np.array([1.0, 1.0])
    if dim == 2:
        theta = 2.0 * np.pi * np.arange(ANGULAR_NODES_2D) / ANGULAR_NODES_2D
        dirs = np.column_stack([np.cos(theta), np.sin(theta)])
        return dirs, np.full(ANGULAR_NODES_2D, 2.0 * np.pi / ANGULAR_NODES_2D)
    if dim == 3:
        z, wz = np.polynomial.legendre.leggauss(POLAR_NODES_3D)
        phi = 2.0 * np.pi * np.arange(AZIMUTH_NODES_3D) / AZIMUTH_NODES_3D
        zz, pp = np.meshgrid(z, phi, indexing="ij")
        s = np.sqrt(1.0 - zz**2)
        dirs = np.column_stack([(s * np.cos(pp)).ravel(), (s * np.sin(pp)).ravel(), zz.ravel()])
        weights = np.outer(wz, np.full(AZIMUTH_NODES_3D, 2.0 * np.pi / AZIMUTH_NODES_3D))
        return dirs, weights.ravel()
    raise DimensionError(f"polar quadrature is available for d <= 3, got d={dim}")


@dataclass(frozen=True, eq=False)
class PolarPart:
    """Density part of a Lévy measure in polar form.

    Parameters
    ----------
    directions:
        ``(n, d)`` unit vectors ``ω_j``.
    weights:
        ``(n,)`` direction weights ``w_j``.
    radial_density:
        Maps a radius ``r > 0`` to the ``(n,)`` values ``ρ_j(r)``
        (Jacobian included).
    r_max:
        Radius beyond which the density vanishes (``inf`` allowed).
    breaks:
        Radii where ``ρ_j`` is not smooth.
    """

    directions: np.ndarray
    weights: np.ndarray
    radial_density: Callable[[float], np.ndarray]
    r_max: float = float("inf")
    breaks: tuple[float, ...] = field(default_factory=tuple)

    @property
    def dim(self) -> int:
        return int(self.directions.shape[1])

    def embedded(self, axis: int, dim: int) -> PolarPart:
        """Place a one-dimensional part on coordinate *axis* of ``R^dim``."""
        dirs = np.zeros((self.directions.shape[0], dim))
        dirs[:, axis] = self.directions[:, 0]
        return PolarPart(dirs, self.weights, self.radial_density, self.r_max, self.breaks)


def radial_quad(
    integrand: Callable[[float], np.ndarray],
    lower: float,
    upper: float,
    *,
    epsabs: float = LEVY_QUAD_EPSABS,
    epsrel: float = LEVY_QUAD_EPSREL,
    breaks: tuple[float, ...] = (),
    strict: bool = True,
    label: str = "radial integral",
) -> QuadResult:
    """Integrate ``integrand(r)`` over ``[lower, upper]``.

    A shell starting at the origin is mapped by ``r = upper·s²`` so that
    algebraic singularities ``r^{-β}`` (β < 1) become smooth; an unbounded
    upper limit is handed to :func:`scipy.integrate.quad_vec` directly.
    """
    if upper <= lower:
        return integrate_vec(integrand, lower, lower, epsabs=epsabs)
    if lower == 0.0 and np.isfinite(upper):
        scale = upper

        def shell(s: float) -> np.ndarray:
            return np.asarray(integrand(scale * s * s)) * (2.0 * scale * s)

        mapped = tuple(np.sqrt(b / scale) for b in breaks if 0.0 < b < upper)
        return integrate_vec(
            shell, 0.0, 1.0, epsabs=epsabs, epsrel=epsrel, points=mapped, strict=strict, label=label
        )
    if lower == 0.0:
        head = radial_quad(integrand, 0.0, 1.0, epsabs=epsabs, epsrel=epsrel, breaks=breaks, strict=strict, label=label)
        tail = radial_quad(integrand, 1.0, upper, epsabs=epsabs, epsrel=epsrel, breaks=breaks, strict=strict, label=label)
        return QuadResult(head.value + tail.value, head.error + tail.error)
    if not np.isfinite(upper):
        finite = tuple(b for b in breaks if b > lower)
        if finite:
            edge = max(finite)
            head = radial_quad(integrand, lower, edge, epsabs=epsabs, epsrel=epsrel, breaks=breaks, strict=strict, label=label)
            tail = integrate_vec(integrand, edge, upper, epsabs=epsabs, epsrel=epsrel, strict=strict, label=label)
            return QuadResult(head.value + tail.value, head.error + tail.error)
    return integrate_vec(
        integrand, lower, upper, epsabs=epsabs, epsrel=epsrel, points=breaks, strict=strict, label=label
    )


def part_moment(
    part: PolarPart,
    power: int,
    lower: float,
    upper: float,
    *,
    epsabs: float = LEVY_QUAD_EPSABS,
) -> QuadResult:
    """Scalar moment ``∫_{lower<|y|≤upper} |y|^power ν(dy)`` of a polar part."""
    hi = min(upper, part.r_max)
    if hi <= lower:
        return QuadResult(np.asarray(0.0), 0.0)

    def integrand(r: float) -> np.ndarray:
        return np.asarray(r**power * float(part.weights @ part.radial_density(r)))

    return radial_quad(integrand, lower, hi, epsabs=epsabs, breaks=part.breaks, label="moment")
