"""Lévy–Khintchine characteristic exponent.

``ψ(u) = ½⟨Qu, u⟩ - i⟨a, u⟩ - ∫(e^{i⟨u,y⟩} - 1 - i⟨u,y⟩1_{|y|≤1}) ν(dy)``
so that ``E e^{i⟨u, Z_t⟩} = e^{-tψ(u)}``.
"""

from __future__ import annotations

import logging
from typing import Literal

import numpy as np

from mehlerlab.core.constants import LEVY_QUAD_EPSABS, LEVY_QUAD_EPSREL, QUADRATURE_SPLIT_RADIUS
from mehlerlab.core.exceptions import DimensionError
from mehlerlab.levy.integration import levy_integral
from mehlerlab.levy.measures import LevyMeasure
from mehlerlab.levy.triplet import LevyTriplet

logger = logging.getLogger(__name__)

ExponentMethod = Literal["auto", "quadrature"]


def jump_exponent_quad(
    nu: LevyMeasure,
    u: np.ndarray,
    *,
    epsabs: float = LEVY_QUAD_EPSABS,
    epsrel: float = LEVY_QUAD_EPSREL,
    strict: bool = True,
) -> tuple[np.ndarray, float]:
    """Jump part of ψ at the rows of ``u`` (shape ``(K, d)``) by quadrature, with its error estimate."""

    def g(y: np.ndarray) -> np.ndarray:
        phase = y @ u.T
        small = (np.linalg.norm(y, axis=1) <= 1.0)[:, None]
        return -(np.expm1(1j * phase) - 1j * phase * small)

    value, err = levy_integral(
        nu, g, QUADRATURE_SPLIT_RADIUS, g_bound=2.0, epsabs=epsabs, epsrel=epsrel, strict=strict
    )
    logger.debug("quadrature exponent of %s: error estimate %.2e", nu.kind, err)
    return np.broadcast_to(np.asarray(value, dtype=complex), (u.shape[0],)).copy(), float(err)


def _rows(triplet: LevyTriplet, u: np.ndarray) -> tuple[np.ndarray, bool]:
    arr = np.asarray(u, dtype=float)
    rows = np.atleast_2d(arr)
    if rows.shape[-1] != triplet.dim or rows.ndim != 2:
        raise DimensionError(f"frequency has shape {arr.shape}, triplet dimension is {triplet.dim}")
    return rows, arr.ndim == 1


def _local_part(triplet: LevyTriplet, rows: np.ndarray) -> np.ndarray:
    gauss = 0.5 * np.einsum("ni,ij,nj->n", rows, triplet.Q, rows)
    return gauss - 1j * (rows @ triplet.a)


def char_exponent(
    triplet: LevyTriplet,
    u: np.ndarray,
    method: ExponentMethod = "auto",
    *,
    strict: bool = True,
) -> complex | np.ndarray:
    """Evaluate ψ at ``u`` of shape ``(d,)`` (returns complex) or ``(n, d)``.

    ``method="auto"`` uses closed forms where a variant has one and falls
    back to quadrature per component; ``"quadrature"`` forces the generic
    :func:`levy_integral` route for every component.
    """
    if method == "quadrature":
        psi, _ = quadrature_exponent(triplet, u, strict=strict)
        return psi
    rows, single = _rows(triplet, u)
    psi = _local_part(triplet, rows)
    for comp in triplet.nu.components():
        closed = comp.jump_exponent(rows)
        if closed is None:
            closed, _ = jump_exponent_quad(comp, rows, strict=strict)
        psi = psi + closed

    zero = ~np.any(rows != 0.0, axis=1)
    psi = np.where(zero, 0.0 + 0.0j, psi)
    return complex(psi[0]) if single else psi


def quadrature_exponent(
    triplet: LevyTriplet,
    u: np.ndarray,
    *,
    strict: bool = True,
) -> tuple[complex | np.ndarray, float]:
    """ψ at ``u`` with every jump component by quadrature, and the summed error estimate.

    With ``strict=False`` an unconverged integral is returned together with
    its estimate instead of raising.
    """
    rows, single = _rows(triplet, u)
    psi = _local_part(triplet, rows)
    error = 0.0
    for comp in triplet.nu.components():
        jump, err = jump_exponent_quad(comp, rows, strict=strict)
        psi = psi + jump
        error += err

    zero = ~np.any(rows != 0.0, axis=1)
    psi = np.where(zero, 0.0 + 0.0j, psi)
    return (complex(psi[0]) if single else psi), error
