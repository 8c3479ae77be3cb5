"""Lévy increments via the Lévy–Itô decomposition.

An increment over ``dt`` is drift plus Brownian part plus the compound
Poisson sum of jumps larger than ``ε`` minus its compensator on
``ε < |y| ≤ 1``.  Jumps of size ``≤ ε`` are either dropped or replaced by a
Gaussian with the same covariance.
"""

from __future__ import annotations

import logging

import numpy as np

from mehlerlab.core.constants import DEFAULT_SMALL_JUMP_CUT
from mehlerlab.levy.measures import LevyMeasure
from mehlerlab.levy.triplet import LevyTriplet

logger = logging.getLogger(__name__)


def uses_gaussian_substitution(nu: LevyMeasure, eps: float) -> bool:
    """Default rule: substitute when ``σ(ε)/ε > 1``, ``σ(ε)²`` the top eigenvalue of ``Σ_ε``."""
    cov = nu.small_jump_covariance(eps)
    top = float(np.linalg.eigvalsh(cov).max(initial=0.0)) if cov.size else 0.0
    return bool(np.sqrt(max(top, 0.0)) / eps > 1.0)


def _gaussian(rng: np.random.Generator, cov: np.ndarray, count: int) -> np.ndarray:
    d = cov.shape[0]
    if not np.any(cov):
        return np.zeros((count, d))
    return rng.multivariate_normal(np.zeros(d), cov, size=count, method="eigh")


def sample_increment(
    triplet: LevyTriplet,
    dt: float,
    eps: float = DEFAULT_SMALL_JUMP_CUT,
    rng: np.random.Generator | None = None,
    size: int | None = None,
    gaussian_substitution: bool | None = None,
) -> np.ndarray:
    """Draw one increment (shape ``(d,)``) or *size* increments (``(size, d)``)."""
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if not 0.0 < eps <= 1.0:
        raise ValueError(f"small-jump cut must lie in (0, 1], got {eps}")
    rng = rng if rng is not None else np.random.default_rng()
    count = 1 if size is None else int(size)
    nu = triplet.nu
    d = triplet.dim

    substitute = uses_gaussian_substitution(nu, eps) if gaussian_substitution is None else gaussian_substitution
    cov = triplet.Q * dt
    if substitute:
        cov = cov + dt * nu.small_jump_covariance(eps)

    out = np.tile(triplet.a * dt - dt * nu.annulus_mean(eps, 1.0), (count, 1))
    out += _gaussian(rng, cov, count)

    rate = nu.jump_rate(eps)
    if rate > 0:
        jumps = rng.poisson(dt * rate, size=count)
        total = int(jumps.sum())
        if total:
            sizes = nu.sample_outside(eps, total, rng)
            owner = np.repeat(np.arange(count), jumps)
            np.add.at(out, owner, sizes)

    return out[0] if size is None else out.reshape(count, d)


def small_jump_bias_bound(triplet: LevyTriplet, eps: float, dt: float, u: np.ndarray) -> float:
    """Bound on the characteristic-function error caused by the small-jump treatment."""
    nu = triplet.nu
    trace = float(np.trace(nu.small_jump_covariance(eps)))
    norm = float(np.linalg.norm(u))
    if uses_gaussian_substitution(nu, eps):
        return dt * norm**3 * eps * trace / 6.0
    return dt * norm**2 * trace / 2.0
