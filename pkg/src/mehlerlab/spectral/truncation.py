"""Finite-rank realisations of a diagonal spectral model and dimension sweeps."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any

import numpy as np

from mehlerlab.core.constants import (
    RAABE_TEST_INDEX,
    SWEEP_CHANGE_TOLERANCE,
    SWEEP_STABLE_FROM_DIM,
    SWEEP_TOLERANCE,
)
from mehlerlab.dynamics.simulator import default_threads
from mehlerlab.functions.membership import sphere_points
from mehlerlab.levy.measures import CoordinateAxis, LevyMeasure, NoJumps, Superposition
from mehlerlab.levy.triplet import LevyTriplet
from mehlerlab.models.functions import TrigPolynomial
from mehlerlab.models.ou import OUModel
from mehlerlab.models.spectral import SequenceRecipe, SpectralModel
from mehlerlab.models.verdict import Verdict
from mehlerlab.semigroup.engine import cauchy_residual

logger = logging.getLogger(__name__)

SWEEP_IDENTITY = "P_t f(x) = f(x) + ∫₀ᵗ L₀(P_s f)(x) ds under truncation to d coordinates"
STABILITY_IDENTITY = "|r_d - r_{d'}| → 0 for successive truncations d' < d"


def _jump_measure(sm: SpectralModel, d: int) -> LevyMeasure:
    if sm.noise is None:
        return NoJumps(d)
    parts: list[LevyMeasure] = []
    for k in range(1, d + 1):
        base = sm.noise.axis_measure(k)
        if not isinstance(base, NoJumps):
            parts.append(CoordinateAxis(base, k - 1, d))
    if not parts:
        return NoJumps(d)
    return parts[0] if len(parts) == 1 else Superposition(tuple(parts))


def galerkin_project(sm: SpectralModel, d: int) -> OUModel:
    """Diagonal OU model on the first ``d`` coordinates."""
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    triplet = LevyTriplet(np.diag(sm.q.terms(d)), sm.a.terms(d), _jump_measure(sm, d))
    return OUModel(np.diag(sm.eigen.terms(d)), triplet)


def in_domain_of_A(sm: SpectralModel, x_recipe: SequenceRecipe) -> bool:
    """Raabe's test on ``b_k = |λ_k x_k|²`` at ``k = RAABE_TEST_INDEX``.

    Finitely supported tails count as convergent.
    """
    k = RAABE_TEST_INDEX
    lam = sm.eigen.terms(k + 1)[-2:]
    xs = x_recipe.terms(k + 1)[-2:]
    b_k, b_next = (lam * xs) ** 2
    if b_next == 0.0:
        return True
    return bool(k * (b_k / b_next - 1.0) > 1.0)


def ca_membership(
    sm: SpectralModel, h_active: np.ndarray, d_values: list[int], radii: list[float]
) -> list[list[Any]]:
    """Sampled ``sup_{|x|=r} |⟨x, A*Dp(x)⟩|`` for ``p = e^{i⟨h,·⟩}`` with finitely supported ``h``.

    Rows are ``d, r, sampled_sup, r·|A*h|``; the bound does not depend on
    ``d`` once ``d`` covers the support of ``h``.
    """
    h_active = np.asarray(h_active, dtype=float).reshape(-1)
    rows: list[list[Any]] = []
    for d in d_values:
        if d < h_active.size:
            raise ValueError(f"dimension {d} is smaller than the support of h ({h_active.size})")
        h = np.zeros(d)
        h[: h_active.size] = h_active
        ah = sm.eigen.terms(d) * h
        for r in radii:
            pts = sphere_points(d, float(r))
            sampled = float(np.max(np.abs(pts @ ah)))
            rows.append([d, float(r), sampled, float(r) * float(np.linalg.norm(ah))])
    return rows


def dimension_sweep(
    sm: SpectralModel,
    x_recipe: SequenceRecipe,
    f: TrigPolynomial,
    t: float,
    dims: list[int],
    *,
    tolerance: float = SWEEP_TOLERANCE,
    change_tolerance: float = SWEEP_CHANGE_TOLERANCE,
    threads: int | None = None,
) -> tuple[list[list[Any]], list[Verdict]]:
    """Cauchy residual of ``f`` at ``x = (x_1..x_d)`` for each truncation ``d``.

    The first verdict bounds the worst residual by *tolerance*.  When some
    ``d >= SWEEP_STABLE_FROM_DIM`` has a predecessor in *dims*, a second one
    bounds the largest residual change over those rows by *change_tolerance*.

    Rows are ``d, residual, residual_change, x_in_domain, ca_sup`` where
    ``ca_sup = |x| · Σ|c_k||A*h_k|`` bounds ``|⟨x, A*Df(x)⟩|``.
    """
    dims = sorted(int(d) for d in dims)
    if not dims or dims[0] < f.dim:
        raise ValueError(f"every dimension must be at least the trig dimension {f.dim}")
    x_in_domain = in_domain_of_A(sm, x_recipe)

    def work(d: int) -> tuple[float, float]:
        model = galerkin_project(sm, d)
        x = x_recipe.terms(d)
        p = f.embedded(d)
        residual, _ = cauchy_residual(model, p, t, x)
        ah = p.frequencies * np.diag(model.A)[None, :]
        ca_sup = float(np.linalg.norm(x)) * float(np.abs(p.coefficients) @ np.linalg.norm(ah, axis=1))
        return residual, ca_sup

    workers = min(threads or default_threads(), len(dims))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(work, dims))
    else:
        results = [work(d) for d in dims]

    rows: list[list[Any]] = []
    previous: float | None = None
    for d, (residual, ca_sup) in zip(dims, results):
        change = float("nan") if previous is None else abs(residual - previous)
        rows.append([d, residual, change, x_in_domain, ca_sup])
        previous = residual
        logger.debug("d=%d residual %.3e", d, residual)

    worst = max(r[1] for r in rows)
    inputs = {"t": t, "dims": dims, "x": x_recipe.to_dict(), "f": f.to_dict(), "model": sm.to_dict()}
    changes = [r[2] for r in rows[1:]]
    details = {"x_in_domain": x_in_domain, "max_change": max(changes) if changes else 0.0}
    verdicts = [Verdict.compare("dimension_sweep", SWEEP_IDENTITY, inputs, worst, tolerance, details)]

    settled = [r[2] for r in rows[1:] if r[0] >= SWEEP_STABLE_FROM_DIM]
    if settled:
        verdicts.append(
            Verdict.compare(
                "dimension_stability",
                STABILITY_IDENTITY,
                inputs,
                max(settled),
                change_tolerance,
                {"from_dim": SWEEP_STABLE_FROM_DIM, "rows": len(settled)},
            )
        )
    else:
        logger.info("no truncation d >= %d with a predecessor; stability not checked", SWEEP_STABLE_FROM_DIM)
    return rows, verdicts
