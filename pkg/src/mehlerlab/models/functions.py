"""Test-function data models.

:class:`TrigPolynomial` is an element of the span of the exponentials
``x ↦ e^{i⟨h, x⟩}``; its calculus, generator and semigroup images are exact.
:class:`SmoothFunction` bundles vectorised value / gradient / Hessian
callables of a generic ``C²_b`` function with declared sup-norm bounds.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from mehlerlab.core.exceptions import ConfigError, DimensionError


def _as_points(x: np.ndarray, dim: int) -> tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=float)
    single = arr.ndim == 1
    pts = np.atleast_2d(arr)
    if pts.shape[-1] != dim or pts.ndim != 2:
        raise DimensionError(f"points have shape {arr.shape}, function dimension is {dim}")
    return pts, single


@dataclass(frozen=True, eq=False)
class TrigPolynomial:
    """Finite sum ``Σ_k c_k e^{i⟨h_k, x⟩}``.

    Parameters
    ----------
    coefficients:
        ``(K,)`` complex coefficients ``c_k``.
    frequencies:
        ``(K, d)`` real frequencies ``h_k``.
    """

    coefficients: np.ndarray
    frequencies: np.ndarray

    def __post_init__(self) -> None:
        c = np.atleast_1d(np.asarray(self.coefficients, dtype=complex))
        h = np.atleast_2d(np.asarray(self.frequencies, dtype=float))
        if h.ndim != 2 or h.shape[0] != c.shape[0]:
            raise DimensionError(f"{c.shape[0]} coefficients but frequencies of shape {h.shape}")
        c.setflags(write=False)
        h.setflags(write=False)
        object.__setattr__(self, "coefficients", c)
        object.__setattr__(self, "frequencies", h)

    # -- constructors -----------------------------------------------------

    @classmethod
    def monomial(cls, h: Any, coefficient: complex = 1.0) -> TrigPolynomial:
        return cls(np.array([coefficient]), np.atleast_2d(np.asarray(h, dtype=float)))

    @classmethod
    def cosine(cls, h: Any, amplitude: float = 1.0) -> TrigPolynomial:
        """``amplitude · cos⟨h, x⟩``."""
        h = np.asarray(h, dtype=float)
        return cls(np.array([amplitude / 2, amplitude / 2]), np.stack([h, -h]))

    @classmethod
    def sine(cls, h: Any, amplitude: float = 1.0) -> TrigPolynomial:
        """``amplitude · sin⟨h, x⟩``."""
        h = np.asarray(h, dtype=float)
        return cls(np.array([amplitude / 2j, -amplitude / 2j]), np.stack([h, -h]))

    @classmethod
    def constant(cls, value: complex, dim: int) -> TrigPolynomial:
        return cls(np.array([value]), np.zeros((1, dim)))

    # -- structure --------------------------------------------------------

    @property
    def dim(self) -> int:
        return int(self.frequencies.shape[1])

    @property
    def n_terms(self) -> int:
        return int(self.coefficients.shape[0])

    def simplified(self, atol: float = 0.0) -> TrigPolynomial:
        """Merge equal frequencies and drop coefficients with ``|c| ≤ atol``."""
        merged: dict[tuple[float, ...], complex] = {}
        for c, h in zip(self.coefficients, self.frequencies):
            key = tuple(float(v) + 0.0 for v in h)
            merged[key] = merged.get(key, 0.0) + complex(c)
        keys = [k for k, v in merged.items() if abs(v) > atol]
        if not keys:
            return TrigPolynomial.constant(0.0, self.dim)
        return TrigPolynomial(np.array([merged[k] for k in keys]), np.array(keys))

    @property
    def is_real(self) -> bool:
        """``True`` iff the terms close under ``(c, h) ↦ (c̄, -h)``."""
        p = self.simplified()
        table = {tuple(h): c for c, h in zip(p.coefficients, p.frequencies)}
        for h, c in table.items():
            mirror = table.get(tuple(-v + 0.0 for v in h))
            if mirror is None or not np.isclose(mirror, np.conj(c), rtol=0.0, atol=1e-14):
                return False
        return True

    @property
    def sup_bound(self) -> float:
        """``Σ |c_k|``, an upper bound of the sup norm."""
        return float(np.abs(self.coefficients).sum())

    @property
    def gradient_bound(self) -> float:
        return float(np.abs(self.coefficients) @ np.linalg.norm(self.frequencies, axis=1))

    @property
    def hessian_bound(self) -> float:
        return float(np.abs(self.coefficients) @ np.sum(self.frequencies**2, axis=1))

    def active_coordinates(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(np.any(self.frequencies != 0.0, axis=0))]

    # -- algebra ----------------------------------------------------------

    def __add__(self, other: TrigPolynomial) -> TrigPolynomial:
        if other.dim != self.dim:
            raise DimensionError(f"cannot add polynomials of dimension {self.dim} and {other.dim}")
        return TrigPolynomial(
            np.concatenate([self.coefficients, other.coefficients]),
            np.concatenate([self.frequencies, other.frequencies]),
        )

    def scaled(self, factor: complex) -> TrigPolynomial:
        return TrigPolynomial(self.coefficients * factor, self.frequencies)

    def conjugate(self) -> TrigPolynomial:
        return TrigPolynomial(np.conj(self.coefficients), -self.frequencies)

    def real_part(self) -> TrigPolynomial:
        return (self + self.conjugate()).scaled(0.5)

    def imag_part(self) -> TrigPolynomial:
        return (self + self.conjugate().scaled(-1.0)).scaled(-0.5j)

    def embedded(self, dim: int) -> TrigPolynomial:
        """Same polynomial read on ``R^dim`` (extra coordinates inactive)."""
        if dim < self.dim:
            raise DimensionError(f"cannot embed dimension {self.dim} into {dim}")
        h = np.zeros((self.n_terms, dim))
        h[:, : self.dim] = self.frequencies
        return TrigPolynomial(self.coefficients, h)

    # -- calculus ---------------------------------------------------------

    def _phases(self, pts: np.ndarray) -> np.ndarray:
        return np.exp(1j * (pts @ self.frequencies.T))

    def value(self, x: np.ndarray) -> complex | np.ndarray:
        pts, single = _as_points(x, self.dim)
        out = self._phases(pts) @ self.coefficients
        return complex(out[0]) if single else out

    __call__ = value

    def gradient(self, x: np.ndarray) -> np.ndarray:
        pts, single = _as_points(x, self.dim)
        weights = self._phases(pts) * (1j * self.coefficients)
        out = weights @ self.frequencies
        return out[0] if single else out

    def hessian(self, x: np.ndarray) -> np.ndarray:
        pts, single = _as_points(x, self.dim)
        weights = -self._phases(pts) * self.coefficients
        out = np.einsum("mk,ki,kj->mij", weights, self.frequencies, self.frequencies)
        return out[0] if single else out

    def as_smooth_function(self, part: str = "real") -> SmoothFunction:
        """Real (or imaginary) part as a :class:`SmoothFunction`."""
        p = self.real_part() if part == "real" else self.imag_part()

        def value(pts: np.ndarray) -> np.ndarray:
            return np.real(p.value(pts))

        def gradient(pts: np.ndarray) -> np.ndarray:
            return np.real(p.gradient(pts))

        def hessian(pts: np.ndarray) -> np.ndarray:
            return np.real(p.hessian(pts))

        bounds = FunctionBounds(p.sup_bound, p.gradient_bound, p.hessian_bound)
        return SmoothFunction(value, gradient, hessian, self.dim, bounds, name=f"{part} trig")

    # -- serialisation ----------------------------------------------------

    def to_dict(self) -> dict[str, Any]:
        return {
            "terms": [
                {"coefficient": [float(c.real), float(c.imag)], "frequency": h.tolist()}
                for c, h in zip(self.coefficients, self.frequencies)
            ]
        }

    @classmethod
    def from_dict(cls, data: Any, path: str = "f") -> TrigPolynomial:
        problems: list[str] = []
        terms = data.get("terms") if isinstance(data, dict) else None
        if not isinstance(terms, list) or not terms:
            raise ConfigError("invalid trig polynomial", [f"{path}.terms: expected a non-empty list"])
        coeffs: list[complex] = []
        freqs: list[list[float]] = []
        for i, term in enumerate(terms):
            sub = f"{path}.terms[{i}]"
            if not isinstance(term, dict):
                problems.append(f"{sub}: expected an object")
                continue
            coef = term.get("coefficient", [1.0, 0.0])
            freq = term.get("frequency")
            if isinstance(coef, (int, float)) and not isinstance(coef, bool):
                coef = [coef, 0.0]
            if not (isinstance(coef, list) and len(coef) == 2 and all(isinstance(v, (int, float)) for v in coef)):
                problems.append(f"{sub}.coefficient: expected [re, im]")
                continue
            if not (isinstance(freq, list) and freq and all(isinstance(v, (int, float)) for v in freq)):
                problems.append(f"{sub}.frequency: expected a non-empty list of numbers")
                continue
            coeffs.append(complex(coef[0], coef[1]))
            freqs.append([float(v) for v in freq])
        if not problems and len({len(f) for f in freqs}) != 1:
            problems.append(f"{path}.terms: frequencies have inconsistent dimensions")
        if problems:
            raise ConfigError("invalid trig polynomial", problems)
        return cls(np.array(coeffs), np.array(freqs))


@dataclass(frozen=True)
class FunctionBounds:
    """Declared sup norms ``(‖f‖₀, ‖Df‖₀, ‖D²f‖₀)``."""

    sup: float
    gradient: float
    hessian: float

    @property
    def total(self) -> float:
        return self.sup + self.gradient + self.hessian


@dataclass(frozen=True, eq=False)
class SmoothFunction:
    """Vectorised ``C²_b`` test function.

    ``value`` maps ``(m, d)`` points to ``(m,)``, ``gradient`` to ``(m, d)``
    and ``hessian`` to ``(m, d, d)``.  ``support`` is ``(center, radius)``
    for compactly supported functions, otherwise ``None``.
    """

    value: Callable[[np.ndarray], np.ndarray]
    gradient: Callable[[np.ndarray], np.ndarray]
    hessian: Callable[[np.ndarray], np.ndarray]
    dim: int
    bounds: FunctionBounds
    support: tuple[np.ndarray, float] | None = None
    name: str = field(default="f")

    def __call__(self, x: np.ndarray) -> float | np.ndarray:
        pts, single = _as_points(x, self.dim)
        out = np.asarray(self.value(pts), dtype=float)
        return float(out[0]) if single else out

    def grad_at(self, x: np.ndarray) -> np.ndarray:
        pts, single = _as_points(x, self.dim)
        out = np.asarray(self.gradient(pts), dtype=float)
        return out[0] if single else out

    def hess_at(self, x: np.ndarray) -> np.ndarray:
        pts, single = _as_points(x, self.dim)
        out = np.asarray(self.hessian(pts), dtype=float)
        return out[0] if single else out

    @property
    def is_compact(self) -> bool:
        return self.support is not None

    def scaled(self, factor: float) -> SmoothFunction:
        k = float(factor)
        return SmoothFunction(
            lambda p: k * self.value(p),
            lambda p: k * self.gradient(p),
            lambda p: k * self.hessian(p),
            self.dim,
            FunctionBounds(abs(k) * self.bounds.sup, abs(k) * self.bounds.gradient, abs(k) * self.bounds.hessian),
            self.support,
            f"{factor}*{self.name}",
        )

    def __add__(self, other: SmoothFunction) -> SmoothFunction:
        if other.dim != self.dim:
            raise DimensionError(f"cannot add functions of dimension {self.dim} and {other.dim}")
        support: tuple[np.ndarray, float] | None = None
        if self.support is not None and other.support is not None:
            c1, r1 = self.support
            c2, r2 = other.support
            center = 0.5 * (np.asarray(c1) + np.asarray(c2))
            radius = max(r1, r2) + 0.5 * float(np.linalg.norm(np.asarray(c1) - np.asarray(c2)))
            support = (center, radius)
        b1, b2 = self.bounds, other.bounds
        return SmoothFunction(
            lambda p: self.value(p) + other.value(p),
            lambda p: self.gradient(p) + other.gradient(p),
            lambda p: self.hessian(p) + other.hessian(p),
            self.dim,
            FunctionBounds(b1.sup + b2.sup, b1.gradient + b2.gradient, b1.hessian + b2.hessian),
            support,
            f"{self.name}+{other.name}",
        )

    # -- self-consistency diagnostics --------------------------------------

    def gradient_error(self, points: np.ndarray, step: float = 1e-5) -> float:
        """Max deviation of ``gradient`` from central differences of ``value``."""
        pts = np.atleast_2d(points)
        eye = np.eye(self.dim) * step
        fd = np.stack(
            [(self.value(pts + e) - self.value(pts - e)) / (2.0 * step) for e in eye], axis=1
        )
        return float(np.max(np.abs(fd - self.gradient(pts))))

    def hessian_asymmetry(self, points: np.ndarray) -> float:
        h = self.hessian(np.atleast_2d(points))
        return float(np.max(np.abs(h - np.swapaxes(h, 1, 2)), initial=0.0))
