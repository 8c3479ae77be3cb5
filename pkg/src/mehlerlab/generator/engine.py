"""The non-local OU generator ``L₀ = ⟨Ax, Df⟩ + L₁``.

``L₁f(x) = ∫(f(x+y) - f(x) - 1_{|y|≤1}⟨y, Df(x)⟩) ν(dy) + ½Tr(Q D²f(x)) + ⟨a, Df(x)⟩``

Trig polynomials are handled exactly through the characteristic exponent;
generic ``C²_b`` functions go through :func:`levy_integral` with the
compensated integrand and a second-order Taylor subtraction on the inner
shell.
"""

from __future__ import annotations

import logging

import numpy as np

from mehlerlab.core.constants import GENERATOR_EPSABS, GENERATOR_EPSREL, L0_BATCH_CHUNK
from mehlerlab.levy.exponent import char_exponent
from mehlerlab.levy.integration import levy_integral
from mehlerlab.levy.triplet import LevyTriplet
from mehlerlab.models.functions import SmoothFunction, TrigPolynomial
from mehlerlab.models.ou import OUModel
from mehlerlab.models.types import Points, Vector

logger = logging.getLogger(__name__)


def _tolerances(target: float | None) -> tuple[float, float]:
    if target is None:
        return GENERATOR_EPSABS, GENERATOR_EPSREL
    return min(GENERATOR_EPSABS, target / 100.0), min(GENERATOR_EPSREL, target / 10.0)


def apply_L1(
    triplet: LevyTriplet,
    f: SmoothFunction,
    x: Vector,
    *,
    cutoff: float = 1.0,
    target: float | None = None,
    strict: bool = True,
) -> tuple[float, float]:
    """``(L₁f(x), error_estimate)``.

    ``cutoff`` moves the compensation to ``1_{|y|≤cutoff}`` with the drift
    shifted by ``-∫_{cutoff<|y|≤1} y ν(dy)`` (signed), which leaves the
    result unchanged.
    """
    if cutoff <= 0:
        raise ValueError(f"cutoff must be positive, got {cutoff}")
    x = np.asarray(x, dtype=float).reshape(-1)
    nu = triplet.nu
    fx = float(f(x))
    grad = f.grad_at(x)
    hess = f.hess_at(x)

    drift = triplet.a
    if cutoff != 1.0:
        drift = drift - nu.annulus_mean(cutoff, 1.0)
    total = 0.5 * float(np.sum(triplet.Q * hess)) + float(drift @ grad)

    def g(y: np.ndarray) -> np.ndarray:
        small = np.linalg.norm(y, axis=1) <= cutoff
        return np.asarray(f.value(x + y)) - fx - small * (y @ grad)

    epsabs, epsrel = _tolerances(target)
    tail_constant = None
    g_bound = None
    if f.support is not None:
        center, radius = f.support
        edge = max(float(np.linalg.norm(x - center)) + radius, cutoff)
        tail_constant = (edge, -fx)
    elif cutoff <= 1.0:
        g_bound = 2.0 * f.bounds.sup
    jump, err = levy_integral(
        nu,
        g,
        min(cutoff, 1.0),
        hessian=hess,
        tail_constant=tail_constant,
        g_bound=g_bound,
        breaks=(cutoff,),
        epsabs=epsabs,
        epsrel=epsrel,
        strict=strict,
    )
    return total + float(np.real(jump)), err


def apply_L0(
    model: OUModel,
    f: SmoothFunction,
    x: Vector,
    *,
    target: float | None = None,
    strict: bool = True,
) -> tuple[float, float]:
    """``(L₀f(x), error_estimate)`` with ``L₀f(x) = ⟨Ax, Df(x)⟩ + L₁f(x)``."""
    x = np.asarray(x, dtype=float).reshape(-1)
    transport = float((model.A @ x) @ f.grad_at(x))
    value, err = apply_L1(model.triplet, f, x, target=target, strict=strict)
    return transport + value, err


def apply_L0_trig(model: OUModel, p: TrigPolynomial, x: Vector) -> complex | np.ndarray:
    """Exact ``L₀p(x) = Σ c_k e^{i⟨h_k,x⟩}(i⟨Ax, h_k⟩ - ψ(h_k))``."""
    arr = np.asarray(x, dtype=float)
    pts = np.atleast_2d(arr)
    psi = np.asarray(char_exponent(model.triplet, p.frequencies))
    phase = np.exp(1j * (pts @ p.frequencies.T))
    transport = 1j * ((pts @ model.A.T) @ p.frequencies.T)
    out = (phase * (transport - psi[None, :])) @ p.coefficients
    return complex(out[0]) if arr.ndim == 1 else out


def apply_L0_pullback(
    model: OUModel,
    f: SmoothFunction,
    x: Vector,
    M: np.ndarray,
    offsets: np.ndarray,
    *,
    target: float | None = None,
    strict: bool = True,
) -> tuple[np.ndarray, float]:
    """``L₀F_k(x)`` for ``F_k(z) = f(Mz + b_k)``, every row ``b_k`` of *offsets*.

    Returns the ``(K,)`` values and the summed error estimate.
    """
    x = np.asarray(x, dtype=float).reshape(-1)
    M = np.atleast_2d(np.asarray(M, dtype=float))
    offsets = np.atleast_2d(np.asarray(offsets, dtype=float))
    anchors = offsets + M @ x
    triplet = model.triplet
    k, d = anchors.shape

    f_at = np.asarray(f.value(anchors))
    grads = np.asarray(f.gradient(anchors)) @ M
    hess = np.einsum("ji,kjl,lm->kim", M, np.asarray(f.hessian(anchors)), M)

    transport = grads @ (model.A @ x)
    local = 0.5 * np.einsum("ij,kij->k", triplet.Q, hess) + grads @ triplet.a

    def g(y: np.ndarray) -> np.ndarray:
        moved = (y @ M.T)[:, None, :] + anchors[None, :, :]
        vals = np.asarray(f.value(moved.reshape(-1, d))).reshape(y.shape[0], k)
        small = (np.linalg.norm(y, axis=1) <= 1.0)[:, None]
        return vals - f_at[None, :] - small * (y @ grads.T)

    tail_constant = None
    g_bound = None
    if f.support is not None:
        center, radius = f.support
        sigma_min = float(np.linalg.svd(M, compute_uv=False).min())
        reach = float(np.max(np.linalg.norm(anchors - center, axis=1))) + radius
        tail_constant = (max(reach / sigma_min, 1.0), -f_at)
    else:
        g_bound = 2.0 * f.bounds.sup
    epsabs, epsrel = _tolerances(target)
    jump, err = levy_integral(
        triplet.nu,
        g,
        1.0,
        hessian=hess,
        tail_constant=tail_constant,
        g_bound=g_bound,
        epsabs=epsabs,
        epsrel=epsrel,
        strict=strict,
    )
    values = transport + local + np.real(np.broadcast_to(jump, (k,)))
    return np.asarray(values, dtype=float), err


def apply_L0_batch(
    model: OUModel,
    f: SmoothFunction,
    points: Points,
    *,
    target: float | None = None,
    chunk: int = L0_BATCH_CHUNK,
    strict: bool = True,
) -> tuple[np.ndarray, float]:
    """``L₀f`` at every row of *points*, shape ``(K,)``, and the largest error estimate.

    Each chunk of points is one vector quadrature (the pullback with ``M = I``
    evaluated at the origin gives ``L₁f`` at the offsets).
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    unique, inverse = np.unique(pts, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    origin = np.zeros(model.dim)
    eye = np.eye(model.dim)
    values = np.empty(unique.shape[0])
    worst = 0.0
    for start in range(0, unique.shape[0], chunk):
        block = unique[start : start + chunk]
        jump, err = apply_L0_pullback(model, f, origin, eye, block, target=target, strict=strict)
        transport = np.einsum("ki,ki->k", block @ model.A.T, np.asarray(f.gradient(block)))
        values[start : start + chunk] = jump + transport
        worst = max(worst, err)
    return values[inverse], worst
