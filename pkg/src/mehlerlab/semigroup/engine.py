"""Evaluation of the OU semigroup ``P_t f(x) = E f(X_t^x)``.

Trig polynomials are closed under ``P_s``: the monomial ``e^{i⟨h,·⟩}`` is
mapped to ``κ_s(h) e^{i⟨e^{sA*}h,·⟩}`` with ``κ_s(h) = exp(-∫₀ˢ ψ(e^{rA*}h) dr)``,
so everything here about trig polynomials is exact up to time quadrature.
Generic functions go through Monte Carlo over simulated endpoints.
"""

from __future__ import annotations

import logging
import math

import numpy as np

from mehlerlab.core.constants import (
    CAUCHY_QUAD_EPSABS,
    DEFAULT_SEED,
    DEFAULT_SMALL_JUMP_CUT,
    MIN_MC_PATHS,
)
from mehlerlab.core.quadrature import integrate_scalar
from mehlerlab.dynamics.flow import (
    ExponentProfile,
    decay_factor,
    exponent_integrals,
    marginal_char,
    matrix_exp,
)
from mehlerlab.dynamics.simulator import terminal_samples
from mehlerlab.generator.engine import apply_L0_trig
from mehlerlab.models.functions import SmoothFunction, TrigPolynomial
from mehlerlab.models.ou import OUModel
from mehlerlab.models.types import Vector

logger = logging.getLogger(__name__)


def mc_mean(values: np.ndarray) -> tuple[float, float]:
    """Sample mean and its standard error."""
    vals = np.asarray(values, dtype=float).reshape(-1)
    if vals.size < 2:
        return float(vals.mean()), math.inf
    return float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(vals.size))


def semigroup_image(model: OUModel, p: TrigPolynomial, s: float) -> TrigPolynomial:
    """The trig polynomial ``P_s p``."""
    if s < 0:
        raise ValueError(f"s must be >= 0, got {s}")
    if s == 0.0:
        return p
    exponents, _ = exponent_integrals(model, s, p.frequencies)
    coefficients = p.coefficients * np.asarray(decay_factor(exponents))
    return TrigPolynomial(coefficients, p.frequencies @ matrix_exp(model.A, s))


def apply_Pt_trig(model: OUModel, p: TrigPolynomial, t: float, x: Vector) -> complex | np.ndarray:
    """``P_t p(x) = Σ_k c_k μ̂_t^x(h_k)``; exact at ``t = 0``."""
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    if t == 0.0:
        return p.value(x)
    total: complex | np.ndarray = 0.0j
    for c, h in zip(p.coefficients, p.frequencies):
        total = total + c * marginal_char(model, t, x, h)
    return total


def apply_Pt_mc(
    model: OUModel,
    f: SmoothFunction,
    t: float,
    x: Vector,
    n_paths: int,
    master_seed: int = DEFAULT_SEED,
    *,
    eps: float = DEFAULT_SMALL_JUMP_CUT,
    threads: int | None = None,
) -> tuple[float, float]:
    """Monte Carlo ``(estimate, stderr)`` of ``P_t f(x)`` from simulated endpoints."""
    if n_paths < MIN_MC_PATHS:
        raise ValueError(f"need at least {MIN_MC_PATHS} paths, got {n_paths}")
    samples = terminal_samples(model, x, t, n_paths, master_seed, eps=eps, threads=threads)
    return mc_mean(f.value(samples))


def cauchy_residual(
    model: OUModel,
    p: TrigPolynomial,
    t: float,
    x: Vector,
    *,
    epsabs: float = CAUCHY_QUAD_EPSABS,
    strict: bool = True,
) -> tuple[float, float]:
    """``(|P_t p(x) - p(x) - ∫₀ᵗ L₀(P_s p)(x) ds|, time-quadrature error)``.

    The integrand applies :func:`apply_L0_trig` to the trig image of ``P_s p``
    whose coefficients come from one :class:`ExponentProfile` per term; the
    left side goes through :func:`marginal_char`.
    """
    if t <= 0:
        raise ValueError(f"t must be positive, got {t}")
    x = np.asarray(x, dtype=float).reshape(-1)
    profiles = [ExponentProfile(model, h, t) for h in p.frequencies]

    def integrand(s: float) -> complex:
        coefficients = np.array([c * complex(prof.decay(s)) for c, prof in zip(p.coefficients, profiles)])
        frequencies = np.vstack([prof.flow(s) for prof in profiles])
        return complex(apply_L0_trig(model, TrigPolynomial(coefficients, frequencies), x))

    integral, err = integrate_scalar(integrand, 0.0, t, epsabs=epsabs, strict=strict, label="Cauchy time integral")
    lhs = complex(apply_Pt_trig(model, p, t, x))
    residual = abs(lhs - complex(p.value(x)) - integral)
    logger.debug("Cauchy residual %.3e at t=%g (quadrature %.1e)", residual, t, err)
    return float(residual), float(err)


def semigroup_law_residual(model: OUModel, p: TrigPolynomial, s: float, t: float, x: Vector) -> float:
    """``|P_{t+s}p(x) - P_t(P_s p)(x)|`` through the closed-form image of ``P_s``."""
    direct = complex(apply_Pt_trig(model, p, t + s, x))
    composed = complex(apply_Pt_trig(model, semigroup_image(model, p, s), t, x))
    return abs(direct - composed)
