"""Lévy measure variants.

Every variant is an immutable description of a measure ``ν`` on ``R^d`` with
``ν({0}) = 0`` and ``∫(1 ∧ |y|²) dν < ∞``.  Variants expose their structure to
the integration engine (atoms plus polar density parts) and the analytic
quantities the simulator and the exponent need: tail masses, truncated
moments, closed-form exponents and samplers for the measure restricted to
``{|y| > ε}``.

Construction validates the parameters and raises :class:`LevyMeasureError`
on an invalid measure.
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import cached_property
from typing import Any, ClassVar

import numpy as np
from scipy import special, stats

from mehlerlab.core.constants import BESSEL_TAIL_TERMS, BESSEL_TAIL_TOLERANCE, STABLE_TAIL_SWITCH
from mehlerlab.core.exceptions import ConfigError, DimensionError, LevyMeasureError, SamplingError
from mehlerlab.levy.polar import PolarPart, part_moment, radial_quad, sphere_area, sphere_rule

logger = logging.getLogger(__name__)

_REJECTION_ROUNDS = 200


def upper_gamma(a: float, x: float) -> float:
    """Upper incomplete gamma ``Γ(a, x)`` for ``a > -2`` and ``x > 0``."""
    if a > 0:
        return float(special.gammaincc(a, x) * special.gamma(a))
    if a == 0:
        return float(special.exp1(x))
    return (upper_gamma(a + 1.0, x) - x**a * np.exp(-x)) / a


def lower_gamma(a: float, x: float) -> float:
    """Lower incomplete gamma ``γ(a, x)`` for ``a > 0``."""
    return float(special.gammainc(a, x) * special.gamma(a))


class LevyMeasure(ABC):
    """Common interface of all Lévy measure variants."""

    kind: ClassVar[str] = ""

    @property
    @abstractmethod
    def dim(self) -> int: ...

    # -- structure --------------------------------------------------------

    def atoms(self) -> tuple[np.ndarray, np.ndarray]:
        """Atomic part as ``(weights (k,), points (k, d))``."""
        return np.zeros(0), np.zeros((0, self.dim))

    def polar_parts(self) -> list[PolarPart]:
        """Density parts in polar form."""
        return []

    def components(self) -> list[LevyMeasure]:
        """Leaf variants (a superposition flattens itself)."""
        return [self]

    @property
    def support_radius(self) -> float:
        """Smallest R with ``ν({|y| > R}) = 0`` (``inf`` if unbounded)."""
        w, pts = self.atoms()
        radius = float(np.max(np.linalg.norm(pts, axis=1), initial=0.0)) if len(w) else 0.0
        for part in self.polar_parts():
            radius = max(radius, part.r_max)
        return radius

    @property
    def is_symmetric(self) -> bool:
        return False

    # -- masses and moments (generic, overridden where closed forms exist) --

    def mass_outside(self, radius: float) -> float:
        """``ν({|y| > radius})`` for ``radius > 0``."""
        w, pts = self.atoms()
        total = float(w[np.linalg.norm(pts, axis=1) > radius].sum()) if len(w) else 0.0
        for part in self.polar_parts():
            total += float(part_moment(part, 0, radius, np.inf).value)
        return total

    def small_jump_mass(self) -> float:
        """``∫ (1 ∧ |y|²) ν(dy)``."""
        w, pts = self.atoms()
        total = 0.0
        if len(w):
            total += float(w @ np.minimum(1.0, np.sum(pts**2, axis=1)))
        for part in self.polar_parts():
            total += float(part_moment(part, 2, 0.0, 1.0).value)
            total += float(part_moment(part, 0, 1.0, np.inf).value)
        return total

    def tail_first_moment(self) -> float:
        """``∫_{|y|>1} |y| ν(dy)`` (``inf`` when it diverges)."""
        w, pts = self.atoms()
        norms = np.linalg.norm(pts, axis=1)
        total = float(w[norms > 1.0] @ norms[norms > 1.0]) if len(w) else 0.0
        for part in self.polar_parts():
            total += float(part_moment(part, 1, 1.0, np.inf).value)
        return total

    @property
    def has_first_moment(self) -> bool:
        return bool(np.isfinite(self.tail_first_moment()))

    def small_jump_covariance(self, eps: float) -> np.ndarray:
        """``∫_{|y|≤eps} y yᵀ ν(dy)``."""
        d = self.dim
        cov = np.zeros((d, d))
        w, pts = self.atoms()
        if len(w):
            inside = np.linalg.norm(pts, axis=1) <= eps
            cov += (pts[inside].T * w[inside]) @ pts[inside]
        for part in self.polar_parts():
            outer = np.einsum("ni,nj->nij", part.directions, part.directions)

            def integrand(r: float, part: PolarPart = part, outer: np.ndarray = outer) -> np.ndarray:
                return r * r * np.einsum("n,nij->ij", part.weights * part.radial_density(r), outer)

            hi = min(eps, part.r_max)
            if hi > 0:
                cov += radial_quad(integrand, 0.0, hi, breaks=part.breaks, label="covariance").value
        return 0.5 * (cov + cov.T)

    def annulus_mean(self, lower: float, upper: float = 1.0) -> np.ndarray:
        """``∫_{lower<|y|≤upper} y ν(dy)``; negative when ``upper < lower``."""
        if upper < lower:
            return -self.annulus_mean(upper, lower)
        mean = np.zeros(self.dim)
        w, pts = self.atoms()
        if len(w):
            norms = np.linalg.norm(pts, axis=1)
            sel = (norms > lower) & (norms <= upper)
            mean += w[sel] @ pts[sel]
        if self.is_symmetric:
            return mean
        for part in self.polar_parts():

            def integrand(r: float, part: PolarPart = part) -> np.ndarray:
                return r * (part.weights * part.radial_density(r)) @ part.directions

            hi = min(upper, part.r_max)
            if hi > lower:
                mean += radial_quad(integrand, lower, hi, breaks=part.breaks, label="mean").value
        return mean

    # -- exponent ---------------------------------------------------------

    def jump_exponent(self, u: np.ndarray) -> np.ndarray | None:
        """Closed form of ``-∫(e^{i⟨u,y⟩} - 1 - i⟨u,y⟩1_{|y|≤1}) ν(dy)``.

        ``u`` has shape ``(..., d)``; returns ``None`` when no closed form is
        known and the caller must fall back to quadrature.
        """
        return None

    # -- sampling ---------------------------------------------------------

    def jump_rate(self, eps: float) -> float:
        """Intensity of jumps larger than *eps*."""
        return self.mass_outside(eps)

    def sample_outside(self, eps: float, count: int, rng: np.random.Generator) -> np.ndarray:
        """Draw *count* points from ``ν`` restricted to ``{|y| > eps}``, normalised."""
        raise SamplingError("no sampler for the restricted measure", self.kind)

    # -- validation / serialisation ----------------------------------------

    @abstractmethod
    def validate(self) -> list[str]:
        """Return a list of validation errors (empty means valid)."""

    @abstractmethod
    def to_dict(self) -> dict[str, Any]: ...

    def _check(self) -> None:
        errors = self.validate()
        if not errors:
            mass = self.small_jump_mass()
            if not np.isfinite(mass):
                errors.append(f"integral of 1 ^ |y|^2 is not finite ({mass})")
        if errors:
            raise LevyMeasureError(f"{self.kind}: " + "; ".join(errors))


# ---------------------------------------------------------------------------
# Zero measure
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NoJumps(LevyMeasure):
    """The zero measure (no jumps)."""

    dimension: int = 1
    kind: ClassVar[str] = "none"

    def __post_init__(self) -> None:
        self._check()

    @property
    def dim(self) -> int:
        return self.dimension

    @property
    def is_symmetric(self) -> bool:
        return True

    def jump_exponent(self, u: np.ndarray) -> np.ndarray:
        return np.zeros(np.shape(u)[:-1], dtype=complex)

    def sample_outside(self, eps: float, count: int, rng: np.random.Generator) -> np.ndarray:
        if count:
            raise SamplingError("zero measure has no jumps", self.kind)
        return np.zeros((0, self.dim))

    def validate(self) -> list[str]:
        return [] if self.dimension >= 1 else [f"dim={self.dimension} must be >= 1"]

    def to_dict(self) -> dict[str, Any]:
        return {"type": self.kind, "dim": self.dimension}


# ---------------------------------------------------------------------------
# Finite atomic
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteAtomic(LevyMeasure):
    """Finite sum of weighted Dirac masses away from the origin."""

    weights: tuple[float, ...]
    points: tuple[tuple[float, ...], ...]
    kind: ClassVar[str] = "finite_atomic"

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        object.__setattr__(self, "points", tuple(tuple(float(c) for c in p) for p in self.points))
        self._check()

    @property
    def dim(self) -> int:
        return len(self.points[0])

    @cached_property
    def _arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return np.asarray(self.weights, dtype=float), np.asarray(self.points, dtype=float)

    def atoms(self) -> tuple[np.ndarray, np.ndarray]:
        return self._arrays

    @property
    def is_symmetric(self) -> bool:
        pairs = {(w, p) for w, p in zip(self.weights, self.points)}
        return all((w, tuple(-c for c in p)) in pairs for w, p in pairs)

    def jump_exponent(self, u: np.ndarray) -> np.ndarray:
        w, pts = self._arrays
        phase = np.asarray(u, dtype=float) @ pts.T
        small = np.linalg.norm(pts, axis=1) <= 1.0
        return -(np.expm1(1j * phase) - 1j * phase * small) @ w

    def sample_outside(self, eps: float, count: int, rng: np.random.Generator) -> np.ndarray:
        w, pts = self._arrays
        big = np.linalg.norm(pts, axis=1) > eps
        if count == 0:
            return np.zeros((0, self.dim))
        if not big.any():
            raise SamplingError(f"no atoms outside radius {eps}", self.kind)
        probs = w[big] / w[big].sum()
        return pts[big][rng.choice(int(big.sum()), size=count, p=probs)]

    def validate(self) -> list[str]:
        errors: list[str] = []
        if not self.weights:
            errors.append("at least one atom is required")
            return errors
        if len(self.weights) != len(self.points):
            errors.append("weights and points differ in length")
        if any(w <= 0 for w in self.weights):
            errors.append("weights must be positive")
        dims = {len(p) for p in self.points}
        if len(dims) != 1:
            errors.append("points have inconsistent dimensions")
        if any(all(c == 0.0 for c in p) for p in self.points):
            errors.append("atoms at the origin are not allowed")
        return errors

    def to_dict(self) -> dict[str, Any]:
        return {
            "type": self.kind,
            "atoms": [{"weight": w, "point": list(p)} for w, p in zip(self.weights, self.points)],
        }


# ---------------------------------------------------------------------------
# Compound Poisson with a named jump law
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GaussianLaw:
    """Normal jump law ``N(mean, cov)``."""

    mean: tuple[float, ...]
    cov: tuple[tuple[float, ...], ...]
    kind: ClassVar[str] = "gaussian"

    @property
    def dim(self) -> int:
        return len(self.mean)

    @cached_property
    def _dist(self) -> Any:
        return stats.multivariate_normal(mean=np.asarray(self.mean), cov=np.asarray(self.cov))

    def pdf(self, points: np.ndarray) -> np.ndarray:
        return np.reshape(self._dist.pdf(points), (-1,))

    def char(self, u: np.ndarray) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        quad = np.einsum("...i,ij,...j->...", u, np.asarray(self.cov), u)
        return np.exp(1j * (u @ np.asarray(self.mean)) - 0.5 * quad)

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        return rng.multivariate_normal(np.asarray(self.mean), np.asarray(self.cov), size=count, method="eigh")

    @property
    def is_symmetric(self) -> bool:
        return not any(self.mean)

    def validate(self) -> list[str]:
        cov = np.asarray(self.cov, dtype=float)
        if cov.shape != (self.dim, self.dim):
            return [f"cov must be {self.dim}x{self.dim}"]
        if not np.allclose(cov, cov.T) or np.linalg.eigvalsh(cov).min() <= 0:
            return ["cov must be symmetric positive definite"]
        return []

    def to_dict(self) -> dict[str, Any]:
        return {"type": self.kind, "mean": list(self.mean), "cov": [list(r) for r in self.cov]}


@dataclass(frozen=True)
class UniformBallLaw:
    """Uniform jump law on the centred ball of radius ``radius``."""

    radius: float
    dimension: int = 1
    kind: ClassVar[str] = "uniform_ball"

    @property
    def dim(self) -> int:
        return self.dimension

    @property
    def volume(self) -> float:
        return sphere_area(self.dimension) * self.radius**self.dimension / self.dimension

    def pdf(self, points: np.ndarray) -> np.ndarray:
        inside = np.linalg.norm(points, axis=-1) <= self.radius
        return inside / self.volume

    def char(self, u: np.ndarray) -> np.ndarray:
        z = self.radius * np.linalg.norm(np.asarray(u, dtype=float), axis=-1)
        nu = self.dimension / 2.0
        safe = np.where(z > 0, z, 1.0)
        val = special.gamma(nu + 1.0) * (2.0 / safe) ** nu * special.jv(nu, safe)
        return np.where(z > 0, val, 1.0).astype(complex)

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        g = rng.standard_normal((count, self.dimension))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        r = self.radius * rng.random(count) ** (1.0 / self.dimension)
        return g * r[:, None]

    @property
    def is_symmetric(self) -> bool:
        return True

    def validate(self) -> list[str]:
        errors = []
        if self.radius <= 0:
            errors.append("radius must be positive")
        if self.dimension < 1:
            errors.append("dim must be >= 1")
        return errors

    def to_dict(self) -> dict[str, Any]:
        return {"type": self.kind, "radius": self.radius, "dim": self.dimension}


@dataclass(frozen=True)
class PointMassLaw:
    """Deterministic jump of size ``point``."""

    point: tuple[float, ...]
    kind: ClassVar[str] = "point_mass"

    @property
    def dim(self) -> int:
        return len(self.point)

    @property
    def is_symmetric(self) -> bool:
        return False

    def validate(self) -> list[str]:
        return ["point must be non-zero"] if not any(self.point) else []

    def to_dict(self) -> dict[str, Any]:
        return {"type": self.kind, "point": list(self.point)}


JumpLaw = GaussianLaw | UniformBallLaw | PointMassLaw


@dataclass(frozen=True)
class CompoundPoisson(LevyMeasure):
    """Finite measure ``λ · law``."""

    rate: float
    law: JumpLaw
    kind: ClassVar[str] = "compound_poisson"

    def __post_init__(self) -> None:
        self._check()

    @property
    def dim(self) -> int:
        return self.law.dim

    def atoms(self) -> tuple[np.ndarray, np.ndarray]:
        if isinstance(self.law, PointMassLaw):
            return np.array([self.rate]), np.asarray([self.law.point], dtype=float)
        return super().atoms()

    def polar_parts(self) -> list[PolarPart]:
        law = self.law
        if isinstance(law, PointMassLaw):
            return []
        dirs, weights = sphere_rule(self.dim)
        d = self.dim
        rate = self.rate

        def radial_density(r: float) -> np.ndarray:
            return rate * r ** (d - 1) * law.pdf(r * dirs)

        if isinstance(law, UniformBallLaw):
            return [PolarPart(dirs, weights, radial_density, law.radius, (law.radius,))]
        return [PolarPart(dirs, weights, radial_density)]

    @property
    def support_radius(self) -> float:
        if isinstance(self.law, PointMassLaw):
            return float(np.linalg.norm(self.law.point))
        if isinstance(self.law, UniformBallLaw):
            return self.law.radius
        return float("inf")

    @property
    def is_symmetric(self) -> bool:
        return self.law.is_symmetric

    def mass_outside(self, radius: float) -> float:
        law = self.law
        if isinstance(law, PointMassLaw):
            return self.rate if np.linalg.norm(law.point) > radius else 0.0
        if isinstance(law, UniformBallLaw):
            return self.rate * max(0.0, 1.0 - (radius / law.radius) ** law.dim)
        if law.dim == 1:
            sd = float(np.sqrt(law.cov[0][0]))
            mu = law.mean[0]
            inside = stats.norm.cdf(radius, mu, sd) - stats.norm.cdf(-radius, mu, sd)
            return self.rate * float(1.0 - inside)
        inside = sum(float(part_moment(p, 0, 0.0, radius).value) for p in self.polar_parts())
        return max(0.0, self.rate - inside)

    def tail_first_moment(self) -> float:
        if isinstance(self.law, UniformBallLaw) and self.law.radius <= 1.0:
            return 0.0
        return super().tail_first_moment()

    @property
    def has_first_moment(self) -> bool:
        return True

    @cached_property
    def _compensator(self) -> np.ndarray:
        """``∫_{|y|≤1} y ν(dy)``."""
        return self.annulus_mean(0.0, 1.0)

    def jump_exponent(self, u: np.ndarray) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        if isinstance(self.law, PointMassLaw):
            char = np.exp(1j * (u @ np.asarray(self.law.point)))
        else:
            char = self.law.char(u)
        return self.rate * (1.0 - char) + 1j * (u @ self._compensator)

    def sample_outside(self, eps: float, count: int, rng: np.random.Generator) -> np.ndarray:
        if count == 0:
            return np.zeros((0, self.dim))
        law = self.law
        if isinstance(law, PointMassLaw):
            if np.linalg.norm(law.point) <= eps:
                raise SamplingError(f"point mass lies inside radius {eps}", self.kind)
            return np.tile(np.asarray(law.point, dtype=float), (count, 1))
        out: list[np.ndarray] = []
        needed = count
        for _ in range(_REJECTION_ROUNDS):
            draw = law.sample(rng, max(2 * needed, 16))
            keep = draw[np.linalg.norm(draw, axis=1) > eps][:needed]
            out.append(keep)
            needed -= len(keep)
            if needed == 0:
                return np.concatenate(out)
        raise SamplingError(f"rejection sampler outside radius {eps} did not finish", self.kind)

    def validate(self) -> list[str]:
        errors = [] if self.rate > 0 else [f"rate={self.rate} must be positive"]
        return errors + self.law.validate()

    def to_dict(self) -> dict[str, Any]:
        return {"type": self.kind, "rate": self.rate, "law": self.law.to_dict()}


# ---------------------------------------------------------------------------
# Tempered stable (d = 1)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TemperedStable(LevyMeasure):
    """One-dimensional tempered stable measure.

    Density ``c₊ e^{-θy} y^{-1-α}`` on ``y > 0`` and ``c₋ e^{-θ|y|} |y|^{-1-α}``
    on ``y < 0``; ``θ = 0`` gives the (untempered) stable measure.
    """

    alpha: float
    c_plus: float = 1.0
    c_minus: float = 0.0
    theta: float = 0.0
    kind: ClassVar[str] = "tempered_stable"

    def __post_init__(self) -> None:
        self._check()

    @property
    def dim(self) -> int:
        return 1

    @property
    def _total(self) -> float:
        return self.c_plus + self.c_minus

    def _profile(self, r: float) -> float:
        return float(np.exp(-self.theta * r) * r ** (-1.0 - self.alpha))

    def polar_parts(self) -> list[PolarPart]:
        weights = np.array([self.c_plus, self.c_minus])

        def radial_density(r: float) -> np.ndarray:
            return np.full(2, self._profile(r))

        return [PolarPart(np.array([[1.0], [-1.0]]), weights, radial_density)]

    @property
    def is_symmetric(self) -> bool:
        return self.c_plus == self.c_minus

    # -- closed-form radial integrals ∫ s^{k-1-α} e^{-θs} ds --------------

    def _radial(self, power: float, lower: float, upper: float) -> float:
        """``∫_lower^upper s^{power-1-α} e^{-θs} ds`` (``inf`` when divergent)."""
        a = power - self.alpha
        th = self.theta
        if th == 0.0:
            if a == 0.0:
                return float(np.log(upper / lower)) if lower > 0 else np.inf
            if a > 0:
                return (upper**a - lower**a) / a if np.isfinite(upper) else np.inf
            if lower == 0.0:
                return np.inf
            return (lower**a - (upper**a if np.isfinite(upper) else 0.0)) / (-a)
        if lower == 0.0:
            if a <= 0:
                return np.inf
            head = lower_gamma(a, th * upper) if np.isfinite(upper) else float(special.gamma(a))
            return th ** (-a) * head
        hi = upper_gamma(a, th * upper) if np.isfinite(upper) else 0.0
        return th ** (-a) * (upper_gamma(a, th * lower) - hi)

    def mass_outside(self, radius: float) -> float:
        return self._total * self._radial(0.0, radius, np.inf)

    def small_jump_mass(self) -> float:
        return self._total * (self._radial(2.0, 0.0, 1.0) + self._radial(0.0, 1.0, np.inf))

    def tail_first_moment(self) -> float:
        if self._total == 0.0:
            return 0.0
        return self._total * self._radial(1.0, 1.0, np.inf)

    @property
    def has_first_moment(self) -> bool:
        return self.theta > 0 or self.alpha > 1 or self._total == 0.0

    def small_jump_covariance(self, eps: float) -> np.ndarray:
        return np.array([[self._total * self._radial(2.0, 0.0, eps)]])

    def annulus_mean(self, lower: float, upper: float = 1.0) -> np.ndarray:
        if upper < lower:
            return -self.annulus_mean(upper, lower)
        skew = self.c_plus - self.c_minus
        if skew == 0.0 or upper == lower:
            return np.zeros(1)
        return np.array([skew * self._radial(1.0, lower, upper)])

    def _one_sided(self, u: np.ndarray) -> np.ndarray:
        """``∫_0^∞ (e^{iuy} - 1 - iuy 1_{y≤1}) e^{-θy} y^{-1-α} dy``."""
        a, th = self.alpha, self.theta
        s = th - 1j * u
        g = special.gamma(-a)
        if a < 1:
            m1 = self._radial(1.0, 0.0, 1.0)
            return g * (s**a - th**a) - 1j * u * m1
        m2 = self._radial(1.0, 1.0, np.inf)
        return g * (s**a - th**a + 1j * u * a * th ** (a - 1.0)) + 1j * u * m2

    def jump_exponent(self, u: np.ndarray) -> np.ndarray | None:
        if self.alpha == 1.0:
            return None
        v = np.asarray(u, dtype=float)[..., 0]
        out = np.zeros(v.shape, dtype=complex)
        if self.c_plus:
            out -= self.c_plus * self._one_sided(v)
        if self.c_minus:
            out -= self.c_minus * self._one_sided(-v)
        return np.where(v == 0.0, 0.0, out)

    def sample_outside(self, eps: float, count: int, rng: np.random.Generator) -> np.ndarray:
        if count == 0:
            return np.zeros((0, 1))
        if self._total == 0.0:
            raise SamplingError("both intensities are zero", self.kind)
        sizes: list[np.ndarray] = []
        needed = count
        for _ in range(_REJECTION_ROUNDS):
            n = max(2 * needed, 16)
            pareto = eps * rng.random(n) ** (-1.0 / self.alpha)
            accept = rng.random(n) < np.exp(-self.theta * (pareto - eps))
            keep = pareto[accept][:needed]
            sizes.append(keep)
            needed -= len(keep)
            if needed == 0:
                break
        else:
            raise SamplingError(f"rejection sampler outside radius {eps} did not finish", self.kind)
        magnitude = np.concatenate(sizes)
        sign = np.where(rng.random(count) < self.c_plus / self._total, 1.0, -1.0)
        return (sign * magnitude)[:, None]

    def validate(self) -> list[str]:
        errors: list[str] = []
        if not 0.0 < self.alpha < 2.0:
            errors.append(f"alpha={self.alpha} must lie in (0, 2)")
        if self.c_plus < 0 or self.c_minus < 0:
            errors.append("intensities must be >= 0")
        if self.c_plus + self.c_minus <= 0:
            errors.append("at least one intensity must be positive")
        if self.theta < 0:
            errors.append(f"theta={self.theta} must be >= 0")
        return errors

    def to_dict(self) -> dict[str, Any]:
        return {
            "type": self.kind,
            "alpha": self.alpha,
            "c_plus": self.c_plus,
            "c_minus": self.c_minus,
            "theta": self.theta,
        }


# ---------------------------------------------------------------------------
# Isotropic stable with radial cutoff
# ---------------------------------------------------------------------------


def _angular_cosine_mean(z: np.ndarray, dim: int) -> np.ndarray:
    """Mean of ``cos(z ω₁)`` over the unit sphere of ``R^dim``."""
    nu = dim / 2.0 - 1.0
    safe = np.where(z > 0, z, 1.0)
    val = special.gamma(dim / 2.0) * (2.0 / safe) ** nu * special.jv(nu, safe)
    return np.where(z > 0, val, 1.0)


def _bessel_tail(order: float, power: float, start: float) -> tuple[float, float]:
    """``∫_start^∞ J_order(ρ) ρ^{-power} dρ`` and a bound on the neglected remainder.

    Integrating by parts with ``(ρ^{μ+1}J_{μ+1})' = ρ^{μ+1}J_μ`` gives
    ``I(μ, β) = -T^{-β}J_{μ+1}(T) + (β+μ+1) I(μ+1, β+1)``; the remainder after
    ``k`` steps is bounded through ``|J| ≤ 1``.
    """
    total = 0.0
    coef = 1.0
    mu, beta = order, power
    bound = float("inf")
    for _ in range(BESSEL_TAIL_TERMS):
        total -= coef * start ** (-beta) * float(special.jv(mu + 1.0, start))
        coef *= beta + mu + 1.0
        mu += 1.0
        beta += 1.0
        bound = coef * start ** (1.0 - beta) / (beta - 1.0)
        if bound <= BESSEL_TAIL_TOLERANCE:
            break
    return total, bound


def stable_constant(alpha: float, dim: int) -> float:
    """``∫ (1 - cos⟨e₁, y⟩) |y|^{-d-α} dy``."""
    num = np.pi ** (dim / 2.0) * special.gamma(1.0 - alpha / 2.0)
    den = alpha * 2.0 ** (alpha - 1.0) * special.gamma((dim + alpha) / 2.0)
    return float(num / den)


@dataclass(frozen=True)
class IsotropicStableRadial(LevyMeasure):
    """Density ``c |y|^{-d-α}`` on ``0 < |y| ≤ r_max``."""

    alpha: float
    c: float = 1.0
    dimension: int = 1
    r_max: float = float("inf")
    kind: ClassVar[str] = "isotropic_stable"

    def __post_init__(self) -> None:
        self._check()

    @property
    def dim(self) -> int:
        return self.dimension

    @property
    def _scale(self) -> float:
        return self.c * sphere_area(self.dimension)

    def polar_parts(self) -> list[PolarPart]:
        dirs, weights = sphere_rule(self.dimension)
        alpha, c = self.alpha, self.c
        n = len(weights)

        def radial_density(r: float) -> np.ndarray:
            return np.full(n, c * r ** (-1.0 - alpha))

        breaks = (self.r_max,) if np.isfinite(self.r_max) else ()
        return [PolarPart(dirs, weights, radial_density, self.r_max, breaks)]

    @property
    def support_radius(self) -> float:
        return self.r_max

    @property
    def is_symmetric(self) -> bool:
        return True

    def mass_outside(self, radius: float) -> float:
        if radius >= self.r_max:
            return 0.0
        return self._scale * (radius ** (-self.alpha) - self.r_max ** (-self.alpha)) / self.alpha

    def small_jump_mass(self) -> float:
        a, big = self.alpha, self.r_max
        inner = min(1.0, big) ** (2.0 - a) / (2.0 - a)
        outer = (1.0 - big ** (-a)) / a if big > 1.0 else 0.0
        return self._scale * (inner + outer)

    def tail_first_moment(self) -> float:
        a, big = self.alpha, self.r_max
        if big <= 1.0:
            return 0.0
        if not np.isfinite(big):
            return self._scale / (a - 1.0) if a > 1.0 else float("inf")
        if a == 1.0:
            return self._scale * float(np.log(big))
        return self._scale * (big ** (1.0 - a) - 1.0) / (1.0 - a)

    def small_jump_covariance(self, eps: float) -> np.ndarray:
        r = min(eps, self.r_max)
        value = self._scale / self.dimension * r ** (2.0 - self.alpha) / (2.0 - self.alpha)
        return value * np.eye(self.dimension)

    def annulus_mean(self, lower: float, upper: float = 1.0) -> np.ndarray:
        return np.zeros(self.dimension)

    def jump_exponent(self, u: np.ndarray) -> np.ndarray:
        norms = np.linalg.norm(np.asarray(u, dtype=float), axis=-1)
        if not np.isfinite(self.r_max):
            return (self.c * stable_constant(self.alpha, self.dimension) * norms**self.alpha).astype(complex)
        out = np.empty(norms.shape, dtype=complex)
        for idx, z in np.ndenumerate(norms):
            out[idx] = self._truncated_exponent(float(z))
        return out

    def _truncated_exponent(self, norm: float) -> float:
        """``c|S^{d-1}| |u|^α G(|u| r_max)`` with ``G(T) = ∫₀^T (1 - m(ρ)) ρ^{-1-α} dρ``."""
        if norm == 0.0:
            return 0.0
        dim, alpha = self.dimension, self.alpha
        reach = norm * self.r_max

        if reach <= STABLE_TAIL_SWITCH:

            def integrand(rho: float) -> np.ndarray:
                return np.asarray((1.0 - _angular_cosine_mean(np.asarray(rho), dim)) * rho ** (-1.0 - alpha))

            profile = float(np.real(radial_quad(integrand, 0.0, reach, label="truncated stable exponent").value))
        else:
            # G(T) = G(∞) - T^{-α}/α + ∫_T^∞ m(ρ) ρ^{-1-α} dρ, m(ρ) = Γ(d/2)(2/ρ)^ν J_ν(ρ)
            order = dim / 2.0 - 1.0
            tail, bound = _bessel_tail(order, order + 1.0 + alpha, reach)
            amplitude = float(special.gamma(dim / 2.0)) * 2.0**order
            full = stable_constant(alpha, dim) / sphere_area(dim)
            profile = full - reach ** (-alpha) / alpha + amplitude * tail
            logger.debug("truncated stable exponent at |u|r_max=%.3g: tail remainder %.1e", reach, bound)
        return self._scale * norm**alpha * profile

    def sample_outside(self, eps: float, count: int, rng: np.random.Generator) -> np.ndarray:
        if count == 0:
            return np.zeros((0, self.dimension))
        if eps >= self.r_max:
            raise SamplingError(f"no mass outside radius {eps}", self.kind)
        a = self.alpha
        lo, hi = eps ** (-a), self.r_max ** (-a)
        radius = (lo - rng.random(count) * (lo - hi)) ** (-1.0 / a)
        g = rng.standard_normal((count, self.dimension))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        return g * radius[:, None]

    def validate(self) -> list[str]:
        errors: list[str] = []
        if not 0.0 < self.alpha < 2.0:
            errors.append(f"alpha={self.alpha} must lie in (0, 2)")
        if self.c <= 0:
            errors.append(f"c={self.c} must be positive")
        if self.dimension < 1:
            errors.append(f"dim={self.dimension} must be >= 1")
        if not self.r_max > 0:
            errors.append(f"r_max={self.r_max} must be positive")
        return errors

    def to_dict(self) -> dict[str, Any]:
        r_max = None if not np.isfinite(self.r_max) else self.r_max
        return {"type": self.kind, "alpha": self.alpha, "c": self.c, "dim": self.dimension, "r_max": r_max}


# ---------------------------------------------------------------------------
# Coordinate-axis embedding and superposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoordinateAxis(LevyMeasure):
    """A one-dimensional measure carried by coordinate ``axis`` of ``R^dim``."""

    base: LevyMeasure
    axis: int
    dimension: int
    kind: ClassVar[str] = "coordinate_axis"

    def __post_init__(self) -> None:
        errors = self.validate()
        if errors:
            raise LevyMeasureError(f"{self.kind}: " + "; ".join(errors))

    @property
    def dim(self) -> int:
        return self.dimension

    def _embed(self, pts: np.ndarray) -> np.ndarray:
        out = np.zeros((pts.shape[0], self.dimension))
        out[:, self.axis] = pts[:, 0]
        return out

    def atoms(self) -> tuple[np.ndarray, np.ndarray]:
        w, pts = self.base.atoms()
        return w, self._embed(pts)

    def polar_parts(self) -> list[PolarPart]:
        return [p.embedded(self.axis, self.dimension) for p in self.base.polar_parts()]

    @property
    def support_radius(self) -> float:
        return self.base.support_radius

    @property
    def is_symmetric(self) -> bool:
        return self.base.is_symmetric

    def mass_outside(self, radius: float) -> float:
        return self.base.mass_outside(radius)

    def small_jump_mass(self) -> float:
        return self.base.small_jump_mass()

    def tail_first_moment(self) -> float:
        return self.base.tail_first_moment()

    @property
    def has_first_moment(self) -> bool:
        return self.base.has_first_moment

    def small_jump_covariance(self, eps: float) -> np.ndarray:
        cov = np.zeros((self.dimension, self.dimension))
        cov[self.axis, self.axis] = self.base.small_jump_covariance(eps)[0, 0]
        return cov

    def annulus_mean(self, lower: float, upper: float = 1.0) -> np.ndarray:
        mean = np.zeros(self.dimension)
        mean[self.axis] = self.base.annulus_mean(lower, upper)[0]
        return mean

    def jump_exponent(self, u: np.ndarray) -> np.ndarray | None:
        u = np.asarray(u, dtype=float)
        return self.base.jump_exponent(u[..., self.axis : self.axis + 1])

    def sample_outside(self, eps: float, count: int, rng: np.random.Generator) -> np.ndarray:
        return self._embed(self.base.sample_outside(eps, count, rng))

    def validate(self) -> list[str]:
        errors: list[str] = []
        if self.base.dim != 1:
            errors.append("base measure must be one-dimensional")
        if not 0 <= self.axis < self.dimension:
            errors.append(f"axis={self.axis} outside 0..{self.dimension - 1}")
        return errors

    def to_dict(self) -> dict[str, Any]:
        return {"type": self.kind, "base": self.base.to_dict(), "axis": self.axis, "dim": self.dimension}


@dataclass(frozen=True)
class Superposition(LevyMeasure):
    """Sum of finitely many Lévy measures of the same dimension."""

    parts: tuple[LevyMeasure, ...]
    kind: ClassVar[str] = "superposition"

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(self.parts))
        errors = self.validate()
        if errors:
            raise LevyMeasureError(f"{self.kind}: " + "; ".join(errors))

    @property
    def dim(self) -> int:
        return self.parts[0].dim

    def components(self) -> list[LevyMeasure]:
        return [leaf for part in self.parts for leaf in part.components()]

    def atoms(self) -> tuple[np.ndarray, np.ndarray]:
        pairs = [p.atoms() for p in self.parts]
        return np.concatenate([w for w, _ in pairs]), np.concatenate([x for _, x in pairs])

    def polar_parts(self) -> list[PolarPart]:
        return [pp for p in self.parts for pp in p.polar_parts()]

    @property
    def support_radius(self) -> float:
        return max(p.support_radius for p in self.parts)

    @property
    def is_symmetric(self) -> bool:
        return all(p.is_symmetric for p in self.parts)

    def mass_outside(self, radius: float) -> float:
        return sum(p.mass_outside(radius) for p in self.parts)

    def small_jump_mass(self) -> float:
        return sum(p.small_jump_mass() for p in self.parts)

    def tail_first_moment(self) -> float:
        return sum(p.tail_first_moment() for p in self.parts)

    @property
    def has_first_moment(self) -> bool:
        return all(p.has_first_moment for p in self.parts)

    def small_jump_covariance(self, eps: float) -> np.ndarray:
        return sum((p.small_jump_covariance(eps) for p in self.parts), np.zeros((self.dim, self.dim)))

    def annulus_mean(self, lower: float, upper: float = 1.0) -> np.ndarray:
        return sum((p.annulus_mean(lower, upper) for p in self.parts), np.zeros(self.dim))

    def jump_exponent(self, u: np.ndarray) -> np.ndarray | None:
        values = [p.jump_exponent(u) for p in self.parts]
        if any(v is None for v in values):
            return None
        return sum(values)  # type: ignore[arg-type, return-value]

    def sample_outside(self, eps: float, count: int, rng: np.random.Generator) -> np.ndarray:
        if count == 0:
            return np.zeros((0, self.dim))
        rates = np.array([p.jump_rate(eps) for p in self.parts])
        counts = rng.multinomial(count, rates / rates.sum())
        draws = [p.sample_outside(eps, int(k), rng) for p, k in zip(self.parts, counts)]
        out = np.concatenate(draws)
        return out[rng.permutation(count)]

    def validate(self) -> list[str]:
        if not self.parts:
            return ["superposition needs at least one part"]
        if len({p.dim for p in self.parts}) != 1:
            return ["parts have inconsistent dimensions"]
        return []

    def to_dict(self) -> dict[str, Any]:
        return {"type": self.kind, "parts": [p.to_dict() for p in self.parts]}


# ---------------------------------------------------------------------------
# JSON schema
# ---------------------------------------------------------------------------


def measure_from_dict(data: Any, path: str = "nu") -> LevyMeasure:
    """Build a measure from its JSON form; schema problems raise :class:`ConfigError`."""
    problems: list[str] = []
    measure = _parse_measure(data, path, problems)
    if problems or measure is None:
        raise ConfigError("invalid Levy measure", problems)
    return measure


def _number(data: dict[str, Any], key: str, path: str, problems: list[str], default: Any = ...) -> Any:
    if key not in data:
        if default is ...:
            problems.append(f"{path}.{key}: required field missing")
            return None
        return default
    value = data[key]
    if value is None and default is not ...:
        return default
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        problems.append(f"{path}.{key}: expected a number, got {value!r}")
        return None
    return value


def _vector(data: dict[str, Any], key: str, path: str, problems: list[str]) -> tuple[float, ...] | None:
    value = data.get(key)
    if not isinstance(value, list) or not value or not all(isinstance(v, (int, float)) for v in value):
        problems.append(f"{path}.{key}: expected a non-empty list of numbers")
        return None
    return tuple(float(v) for v in value)


def _parse_law(data: Any, path: str, problems: list[str]) -> JumpLaw | None:
    if not isinstance(data, dict):
        problems.append(f"{path}: expected an object")
        return None
    kind = data.get("type")
    if kind == GaussianLaw.kind:
        mean = _vector(data, "mean", path, problems)
        cov = data.get("cov")
        if not isinstance(cov, list) or not all(isinstance(r, list) for r in cov):
            problems.append(f"{path}.cov: expected a matrix (list of rows)")
            return None
        if mean is None:
            return None
        return GaussianLaw(mean, tuple(tuple(float(v) for v in r) for r in cov))
    if kind == UniformBallLaw.kind:
        radius = _number(data, "radius", path, problems)
        dim = _number(data, "dim", path, problems, 1)
        return None if radius is None or dim is None else UniformBallLaw(float(radius), int(dim))
    if kind == PointMassLaw.kind:
        point = _vector(data, "point", path, problems)
        return None if point is None else PointMassLaw(point)
    problems.append(f"{path}.type: unknown jump law {kind!r}")
    return None


def _parse_measure(data: Any, path: str, problems: list[str]) -> LevyMeasure | None:
    if not isinstance(data, dict):
        problems.append(f"{path}: expected an object with a 'type' tag")
        return None
    kind = data.get("type")
    try:
        if kind == NoJumps.kind:
            dim = _number(data, "dim", path, problems, 1)
            return None if dim is None else NoJumps(int(dim))
        if kind == FiniteAtomic.kind:
            atoms = data.get("atoms")
            if not isinstance(atoms, list) or not atoms:
                problems.append(f"{path}.atoms: expected a non-empty list")
                return None
            weights, points = [], []
            for i, atom in enumerate(atoms):
                sub = f"{path}.atoms[{i}]"
                if not isinstance(atom, dict):
                    problems.append(f"{sub}: expected an object")
                    continue
                w = _number(atom, "weight", sub, problems)
                p = _vector(atom, "point", sub, problems)
                if w is not None and p is not None:
                    weights.append(float(w))
                    points.append(p)
            if problems:
                return None
            return FiniteAtomic(tuple(weights), tuple(points))
        if kind == CompoundPoisson.kind:
            rate = _number(data, "rate", path, problems)
            law = _parse_law(data.get("law"), f"{path}.law", problems)
            return None if rate is None or law is None else CompoundPoisson(float(rate), law)
        if kind == TemperedStable.kind:
            alpha = _number(data, "alpha", path, problems)
            cp = _number(data, "c_plus", path, problems, 1.0)
            cm = _number(data, "c_minus", path, problems, 0.0)
            theta = _number(data, "theta", path, problems, 0.0)
            if None in (alpha, cp, cm, theta):
                return None
            return TemperedStable(float(alpha), float(cp), float(cm), float(theta))
        if kind == IsotropicStableRadial.kind:
            alpha = _number(data, "alpha", path, problems)
            c = _number(data, "c", path, problems, 1.0)
            dim = _number(data, "dim", path, problems, 1)
            r_max = _number(data, "r_max", path, problems, float("inf"))
            if None in (alpha, c, dim, r_max):
                return None
            return IsotropicStableRadial(float(alpha), float(c), int(dim), float(r_max))
        if kind == CoordinateAxis.kind:
            base = _parse_measure(data.get("base"), f"{path}.base", problems)
            axis = _number(data, "axis", path, problems)
            dim = _number(data, "dim", path, problems)
            if base is None or axis is None or dim is None:
                return None
            return CoordinateAxis(base, int(axis), int(dim))
        if kind == Superposition.kind:
            raw = data.get("parts")
            if not isinstance(raw, list) or not raw:
                problems.append(f"{path}.parts: expected a non-empty list")
                return None
            parts = [_parse_measure(p, f"{path}.parts[{i}]", problems) for i, p in enumerate(raw)]
            if any(p is None for p in parts):
                return None
            return Superposition(tuple(p for p in parts if p is not None))
    except (LevyMeasureError, DimensionError) as exc:
        problems.append(f"{path}: {exc}")
        return None
    problems.append(f"{path}.type: unknown Levy measure variant {kind!r}")
    return None


__all__ = [
    "CompoundPoisson",
    "CoordinateAxis",
    "FiniteAtomic",
    "GaussianLaw",
    "IsotropicStableRadial",
    "JumpLaw",
    "LevyMeasure",
    "NoJumps",
    "PointMassLaw",
    "Superposition",
    "TemperedStable",
    "UniformBallLaw",
    "measure_from_dict",
    "stable_constant",
]
