"""Exponential-Euler path simulation of ``dX = AX dt + dZ``.

Each internal step of length ``Δ`` applies

    X_{t+Δ} = e^{ΔA} X_t + Φ(Δ)(a - m_ε) + G + Σ_k e^{(Δ-τ_k)A} y_k

with ``Φ(Δ) = ∫₀^Δ e^{rA} dr``, ``G`` the exact Gaussian stochastic
convolution (Van Loan covariance), ``m_ε`` the compensator of the jumps in
``ε < |y| ≤ 1`` and ``(τ_k, y_k)`` the jumps larger than ``ε`` with uniform
times inside the step.  A finite truncation level ``n`` discards jumps with
``|y| > n`` after they are drawn, so truncated and untruncated ensembles
with the same seed are coupled path by path.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import psutil
from scipy import linalg

from mehlerlab.core.constants import (
    DEFAULT_MAX_STEP,
    DEFAULT_SEED,
    DEFAULT_SMALL_JUMP_CUT,
    STEPS_PER_HORIZON,
)
from mehlerlab.core.exceptions import GridError
from mehlerlab.core.rng import block_sizes, stream
from mehlerlab.dynamics.flow import apply_flow, matrix_exp
from mehlerlab.levy.sampling import uses_gaussian_substitution
from mehlerlab.models.ou import EnsembleMeta, OUModel, PathEnsemble

logger = logging.getLogger(__name__)

SCHEME = "exponential-euler"


def default_threads() -> int:
    """Available parallelism (logical CPUs)."""
    return max(1, psutil.cpu_count(logical=True) or 1)


@dataclass(frozen=True, eq=False)
class StepKernel:
    """Precomputed deterministic parts of one exponential-Euler step."""

    dt: float
    propagator: np.ndarray
    drift: np.ndarray
    noise_factor: np.ndarray | None


def drift_integral(A: np.ndarray, dt: float) -> np.ndarray:
    """``Φ(dt) = ∫₀^dt e^{rA} dr`` from the augmented exponential."""
    d = A.shape[0]
    aug = np.zeros((2 * d, 2 * d))
    aug[:d, :d] = A
    aug[:d, d:] = np.eye(d)
    return np.asarray(linalg.expm(dt * aug))[:d, d:]


def convolution_covariance(A: np.ndarray, sigma: np.ndarray, dt: float) -> np.ndarray:
    """``∫₀^dt e^{rA} Σ e^{rA*} dr`` (Van Loan)."""
    d = A.shape[0]
    block = np.zeros((2 * d, 2 * d))
    block[:d, :d] = -A
    block[:d, d:] = sigma
    block[d:, d:] = A.T
    expo = np.asarray(linalg.expm(dt * block))
    cov = expo[d:, d:].T @ expo[:d, d:]
    return 0.5 * (cov + cov.T)


class PathSimulator:
    """Simulates ensembles of one model for fixed ``ε`` and truncation level."""

    def __init__(
        self,
        model: OUModel,
        eps: float = DEFAULT_SMALL_JUMP_CUT,
        truncation: float = math.inf,
        *,
        gaussian_substitution: bool | None = None,
    ) -> None:
        if not 0.0 < eps <= 1.0:
            raise ValueError(f"small-jump cut must lie in (0, 1], got {eps}")
        if truncation <= 0:
            raise ValueError(f"truncation level must be positive, got {truncation}")
        self.model = model
        self.eps = eps
        self.truncation = truncation
        nu = model.triplet.nu
        self.substitute = (
            uses_gaussian_substitution(nu, eps) if gaussian_substitution is None else gaussian_substitution
        )
        if self.substitute:
            logger.info("small jumps below %.3g replaced by a Gaussian", eps)
        self._sigma = model.triplet.Q + (nu.small_jump_covariance(eps) if self.substitute else 0.0)
        upper = min(1.0, truncation)
        compensator = nu.annulus_mean(eps, upper) if upper > eps else np.zeros(model.dim)
        self._net_drift = model.triplet.a - compensator
        self._rate = nu.jump_rate(eps)
        self._kernels: dict[float, StepKernel] = {}

    def kernel(self, dt: float) -> StepKernel:
        key = float(f"{dt:.15g}")
        cached = self._kernels.get(key)
        if cached is not None:
            return cached
        A = self.model.A
        noise = None
        if np.any(self._sigma):
            cov = convolution_covariance(A, self._sigma, dt)
            w, v = np.linalg.eigh(cov)
            noise = v * np.sqrt(np.clip(w, 0.0, None))
        k = StepKernel(dt, matrix_exp(A, dt), drift_integral(A, dt) @ self._net_drift, noise)
        self._kernels[key] = k
        return k

    def step(self, x: np.ndarray, kernel: StepKernel, rng: np.random.Generator) -> np.ndarray:
        """Advance every row of ``x`` by one step."""
        n, d = x.shape
        out = x @ kernel.propagator.T + kernel.drift
        if kernel.noise_factor is not None:
            out += rng.standard_normal((n, d)) @ kernel.noise_factor.T
        if self._rate > 0:
            counts = rng.poisson(self._rate * kernel.dt, size=n)
            total = int(counts.sum())
            if total:
                sizes = self.model.triplet.nu.sample_outside(self.eps, total, rng)
                times = rng.random(total) * kernel.dt
                owner = np.repeat(np.arange(n), counts)
                if math.isfinite(self.truncation):
                    keep = np.linalg.norm(sizes, axis=1) <= self.truncation
                    sizes, times, owner = sizes[keep], times[keep], owner[keep]
                if owner.size:
                    np.add.at(out, owner, apply_flow(self.model.A, kernel.dt - times, sizes))
        return out

    def schedule(self, grid: np.ndarray, max_step: float | None = None) -> list[tuple[int, float]]:
        """Number and length of internal steps between consecutive grid times."""
        horizon = float(grid[-1])
        limit = max_step if max_step is not None else min(DEFAULT_MAX_STEP, horizon / STEPS_PER_HORIZON)
        plan: list[tuple[int, float]] = []
        for gap in np.diff(grid):
            k = max(1, math.ceil(gap / limit - 1e-9))
            plan.append((k, float(gap) / k))
        return plan

    def simulate_block(
        self, x0: np.ndarray, count: int, plan: list[tuple[int, float]], rng: np.random.Generator
    ) -> np.ndarray:
        d = self.model.dim
        states = np.empty((count, len(plan) + 1, d))
        x = np.tile(x0, (count, 1))
        states[:, 0] = x
        for j, (k, dt) in enumerate(plan):
            kern = self.kernel(dt)
            for _ in range(k):
                x = self.step(x, kern, rng)
            states[:, j + 1] = x
        return states

    def run(
        self,
        x0: np.ndarray,
        grid: np.ndarray,
        n_paths: int,
        master_seed: int = DEFAULT_SEED,
        *,
        max_step: float | None = None,
        threads: int | None = None,
    ) -> PathEnsemble:
        x0 = np.asarray(x0, dtype=float).reshape(-1)
        grid = validate_grid(grid)
        if n_paths < 1:
            raise ValueError(f"need at least one path, got {n_paths}")
        if x0.size != self.model.dim:
            raise ValueError(f"initial point has dimension {x0.size}, model has {self.model.dim}")
        plan = self.schedule(grid, max_step)
        for _, dt in plan:
            self.kernel(dt)
        sizes = block_sizes(n_paths)
        workers = min(threads or default_threads(), len(sizes))

        def work(index: int) -> np.ndarray:
            return self.simulate_block(x0, sizes[index], plan, stream(master_seed, index))

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                blocks = list(pool.map(work, range(len(sizes))))
        else:
            blocks = [work(i) for i in range(len(sizes))]

        steps = sum(k for k, _ in plan)
        logger.debug("simulated %d paths, %d steps, %d blocks", n_paths, steps, len(sizes))
        meta = EnsembleMeta(
            master_seed=int(master_seed),
            scheme=SCHEME,
            small_jump_cut=self.eps,
            truncation=self.truncation,
            x0=tuple(float(v) for v in x0),
            gaussian_substitution=self.substitute,
        )
        return PathEnsemble(grid, np.concatenate(blocks, axis=0), meta, steps)


def validate_grid(grid: np.ndarray) -> np.ndarray:
    arr = np.asarray(grid, dtype=float).reshape(-1)
    if arr.size == 0 or arr[0] != 0.0:
        raise GridError("time grid must start at 0")
    if np.any(np.diff(arr) <= 0):
        raise GridError("time grid must be strictly increasing")
    return arr


def simulate_paths(
    model: OUModel,
    x: np.ndarray,
    grid: np.ndarray,
    n_paths: int,
    eps: float = DEFAULT_SMALL_JUMP_CUT,
    truncation: float = math.inf,
    master_seed: int = DEFAULT_SEED,
    *,
    max_step: float | None = None,
    threads: int | None = None,
    gaussian_substitution: bool | None = None,
) -> PathEnsemble:
    """Simulate ``n_paths`` trajectories of ``model`` from ``x`` on ``grid``."""
    sim = PathSimulator(model, eps, truncation, gaussian_substitution=gaussian_substitution)
    return sim.run(x, grid, n_paths, master_seed, max_step=max_step, threads=threads)


def terminal_samples(
    model: OUModel,
    x: np.ndarray,
    t: float,
    n_paths: int,
    master_seed: int = DEFAULT_SEED,
    *,
    eps: float = DEFAULT_SMALL_JUMP_CUT,
    truncation: float = math.inf,
    threads: int | None = None,
) -> np.ndarray:
    """Samples of ``X_t^x``, shape ``(n_paths, d)``."""
    if t == 0.0:
        return np.tile(np.asarray(x, dtype=float), (n_paths, 1))
    grid = np.array([0.0, t])
    ens = simulate_paths(model, x, grid, n_paths, eps, truncation, master_seed, threads=threads)
    return ens.final
