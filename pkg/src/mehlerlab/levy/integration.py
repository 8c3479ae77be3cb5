"""Integration against (possibly singular) Lévy measures.

:func:`levy_integral` is the shared backend of the characteristic exponent
and of the jump part of the generator.  The caller supplies an integrand that
is already compensated (``g(y) = O(|y|²)`` at the origin); atoms are summed
exactly and each polar density part is integrated over the inner shell
``|y| ≤ ε``, the annulus ``ε < |y| ≤ 1`` and the tail ``|y| > 1``.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

import numpy as np

from mehlerlab.core.constants import (
    LEVY_QUAD_EPSABS,
    LEVY_QUAD_EPSREL,
    TAIL_MASS_TOLERANCE,
    TAIL_SEARCH_MAX_RADIUS,
)
from mehlerlab.core.exceptions import QuadratureError
from mehlerlab.levy.measures import LevyMeasure
from mehlerlab.levy.polar import PolarPart, radial_quad

logger = logging.getLogger(__name__)

JumpIntegrand = Callable[[np.ndarray], np.ndarray]


def _part_integrand(part: PolarPart, g: JumpIntegrand, hessian: np.ndarray | None) -> Callable[[float], np.ndarray]:
    """Radial integrand ``Σ_j w_j ρ_j(r) g(r ω_j)`` (optionally Taylor-subtracted)."""

    def integrand(r: float) -> np.ndarray:
        points = r * part.directions
        values = np.asarray(g(points))
        if hessian is not None:
            values = values - _quadratic_term(points, hessian)
        mass = part.weights * part.radial_density(r)
        return np.tensordot(mass, values, axes=(0, 0))

    return integrand


def _quadratic_term(points: np.ndarray, hessian: np.ndarray) -> np.ndarray:
    """``½ yᵀHy`` for a ``(d, d)`` or stacked ``(K, d, d)`` Hessian."""
    if hessian.ndim == 2:
        return 0.5 * np.einsum("ni,ij,nj->n", points, hessian, points)
    return 0.5 * np.einsum("ni,kij,nj->nk", points, hessian, points)


def _tail_radius(nu: LevyMeasure, g_bound: float) -> float | None:
    """Radius beyond which the remaining mass times ``g_bound`` is negligible."""
    radius = 2.0
    while radius <= TAIL_SEARCH_MAX_RADIUS:
        if g_bound * nu.mass_outside(radius) <= TAIL_MASS_TOLERANCE:
            return radius
        radius *= 2.0
    return None


def levy_integral(
    nu: LevyMeasure,
    g: JumpIntegrand,
    eps: float,
    *,
    hessian: np.ndarray | None = None,
    tail_constant: tuple[float, Any] | None = None,
    g_bound: float | None = None,
    breaks: tuple[float, ...] = (),
    epsabs: float = LEVY_QUAD_EPSABS,
    epsrel: float = LEVY_QUAD_EPSREL,
    strict: bool = True,
) -> tuple[np.ndarray, float]:
    """Return ``(∫ g dν, error_estimate)``.

    Parameters
    ----------
    g:
        Maps an ``(m, d)`` array of jump sizes to ``(m,)`` or ``(m, K)``
        values (real or complex).
    eps:
        Split radius of the inner shell, ``0 < eps ≤ 1``.
    hessian:
        If given, ``½ yᵀ H y`` is subtracted from ``g`` on the inner shell and
        its exact integral ``½ Tr(H Σ_ε)`` is added back.
    tail_constant:
        ``(R0, c)`` when ``g ≡ c`` on ``|y| > R0``; the tail beyond ``R0`` is
        then the exact product ``c · ν(|y| > R0)``.
    g_bound:
        Bound on ``|g|`` for ``|y| > 1``; enables truncation of an unbounded
        tail once the remaining mass is negligible.
    breaks:
        Extra radii where the integrand is not smooth.
    """
    if not 0.0 < eps <= 1.0:
        raise ValueError(f"split radius must lie in (0, 1], got {eps}")

    value: Any = 0.0
    error = 0.0

    weights, points = nu.atoms()
    if len(weights):
        value = value + np.tensordot(weights, np.asarray(g(points)), axes=(0, 0))

    parts = nu.polar_parts()
    if not parts:
        return np.asarray(value), error

    tail_edge = float("inf")
    tail_extra: Any = 0.0
    if tail_constant is not None:
        r0, const = tail_constant
        tail_edge = max(1.0, float(r0))
        atom_mass = float(weights[np.linalg.norm(points, axis=1) > tail_edge].sum()) if len(weights) else 0.0
        tail_extra = np.asarray(const) * (nu.mass_outside(tail_edge) - atom_mass)
    elif g_bound is not None and not np.isfinite(nu.support_radius):
        edge = _tail_radius(nu, g_bound)
        if edge is None:
            logger.warning(
                "tail mass beyond radius %.1e exceeds the budget; integrating to infinity",
                TAIL_SEARCH_MAX_RADIUS,
            )
        else:
            tail_edge = edge
            error += g_bound * nu.mass_outside(edge)

    for idx, part in enumerate(parts):
        cuts = tuple(sorted(set(part.breaks) | set(breaks)))
        integrand = _part_integrand(part, g, None)
        regions: list[tuple[float, float, Callable[[float], np.ndarray]]] = []
        inner_hi = min(eps, part.r_max)
        regions.append((0.0, inner_hi, _part_integrand(part, g, hessian) if hessian is not None else integrand))
        if part.r_max > eps:
            regions.append((eps, min(1.0, part.r_max), integrand))
        if part.r_max > 1.0:
            regions.append((1.0, min(part.r_max, tail_edge), integrand))
        for lower, upper, func in regions:
            if upper <= lower:
                continue
            try:
                res = radial_quad(
                    func,
                    lower,
                    upper,
                    epsabs=epsabs,
                    epsrel=epsrel,
                    breaks=cuts,
                    strict=strict,
                    label=f"jump integral part {idx} on [{lower:g}, {upper:g}]",
                )
            except FloatingPointError as exc:
                raise QuadratureError(f"integrand evaluation failed: {exc}") from exc
            value = value + res.value
            error += res.error

    if hessian is not None:
        cov = nu.small_jump_covariance(eps)
        atom_cov = np.zeros_like(cov)
        if len(weights):
            inside = np.linalg.norm(points, axis=1) <= eps
            atom_cov = (points[inside].T * weights[inside]) @ points[inside]
        density_cov = cov - atom_cov
        if hessian.ndim == 2:
            value = value + 0.5 * float(np.sum(hessian * density_cov))
        else:
            value = value + 0.5 * np.einsum("kij,ij->k", hessian, density_cov)

    value = value + tail_extra
    return np.asarray(value), error


@dataclass(frozen=True)
class LevyMeasureReport:
    """Integrability diagnostics of a Lévy measure."""

    kind: str
    dim: int
    small_jump_mass: float
    tail_first_moment: float
    has_first_moment: bool
    is_symmetric: bool
    support_radius: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "dim": self.dim,
            "small_jump_mass": self.small_jump_mass,
            "tail_first_moment": self.tail_first_moment if np.isfinite(self.tail_first_moment) else "inf",
            "has_first_moment": self.has_first_moment,
            "is_symmetric": self.is_symmetric,
            "support_radius": self.support_radius if np.isfinite(self.support_radius) else "inf",
        }


def check_levy_measure(nu: LevyMeasure) -> LevyMeasureReport:
    """Report ``∫(1 ∧ |y|²) dν``, ``∫_{|y|>1} |y| dν`` and the first-moment flag."""
    tail = nu.tail_first_moment() if nu.has_first_moment else float("inf")
    report = LevyMeasureReport(
        kind=nu.kind,
        dim=nu.dim,
        small_jump_mass=nu.small_jump_mass(),
        tail_first_moment=tail,
        has_first_moment=nu.has_first_moment,
        is_symmetric=nu.is_symmetric,
        support_radius=nu.support_radius,
    )
    logger.debug("measure check %s", report)
    return report
