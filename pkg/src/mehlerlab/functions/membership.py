"""Sampled decay diagnostics for the core ``𝒟₀``.

``f ∈ 𝒟₀`` requires ``f, Df, D²f`` and ``x ↦ ⟨Ax, Df(x)⟩`` to vanish at
infinity.  Sampling on spheres cannot prove membership; the report only says
whether the samples are consistent with it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from mehlerlab.core.constants import D0_TOLERANCE, SPHERE_POINTS_2D, SPHERE_POINTS_3D
from mehlerlab.core.rng import stream
from mehlerlab.models.functions import SmoothFunction


def sphere_points(dim: int, radius: float) -> np.ndarray:
    """Deterministic sample of the sphere ``|x| = radius`` in ``R^dim``."""
    if dim == 1:
        dirs = np.array([[1.0], [-1.0]])
    elif dim == 2:
        theta = 2.0 * np.pi * np.arange(SPHERE_POINTS_2D) / SPHERE_POINTS_2D
        dirs = np.column_stack([np.cos(theta), np.sin(theta)])
    elif dim == 3:
        k = np.arange(SPHERE_POINTS_3D) + 0.5
        z = 1.0 - 2.0 * k / SPHERE_POINTS_3D
        phi = np.pi * (1.0 + np.sqrt(5.0)) * k
        s = np.sqrt(1.0 - z * z)
        dirs = np.column_stack([s * np.cos(phi), s * np.sin(phi), z])
    else:
        g = stream(dim, 0).standard_normal((SPHERE_POINTS_3D * dim, dim))
        dirs = g / np.linalg.norm(g, axis=1, keepdims=True)
    return radius * dirs


@dataclass(frozen=True)
class ShellMaxima:
    radius: float
    value: float
    gradient: float
    hessian: float
    transport: float

    @property
    def worst(self) -> float:
        return max(self.value, self.gradient, self.hessian, self.transport)


@dataclass(frozen=True)
class D0Report:
    """Shell maxima and the sampled verdict."""

    shells: list[ShellMaxima]
    consistent: bool
    tolerance: float

    def rows(self) -> list[list[Any]]:
        return [[s.radius, s.value, s.gradient, s.hessian, s.transport] for s in self.shells]


def d0_membership(
    f: SmoothFunction, A: np.ndarray, shell_radii: list[float], tolerance: float = D0_TOLERANCE
) -> D0Report:
    """Maxima of ``|f|, |Df|, ‖D²f‖, |⟨Ax, Df⟩|`` on each sphere."""
    radii = [float(r) for r in shell_radii]
    if not radii or any(r <= 0 for r in radii) or any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("shell radii must be positive and strictly increasing")
    A = np.atleast_2d(np.asarray(A, dtype=float))
    shells: list[ShellMaxima] = []
    for r in radii:
        pts = sphere_points(f.dim, r)
        grad = np.asarray(f.gradient(pts), dtype=float)
        hess = np.asarray(f.hessian(pts), dtype=float)
        transport = np.einsum("mi,mi->m", pts @ A.T, grad)
        shells.append(
            ShellMaxima(
                radius=r,
                value=float(np.max(np.abs(f.value(pts)))),
                gradient=float(np.max(np.linalg.norm(grad, axis=1))),
                hessian=float(np.max(np.linalg.norm(hess, ord=2, axis=(1, 2)))),
                transport=float(np.max(np.abs(transport))),
            )
        )
    return D0Report(shells, shells[-1].worst < tolerance, tolerance)
