"""Concrete test functions with exact derivatives and declared bounds."""

from __future__ import annotations

from typing import Any

import numpy as np

from mehlerlab.core.exceptions import ConfigError
from mehlerlab.models.functions import FunctionBounds, SmoothFunction

# max of 6 (1-q)^2 sqrt(q) over q in [0, 1], attained at q = 1/5.
_BUMP_GRADIENT_CONSTANT = 6.0 * 0.64 / np.sqrt(5.0)


def make_bump(center: Any, radius: float) -> SmoothFunction:
    """``(1 - |x-c|²/r²)³`` inside the ball ``B(c, r)``, zero outside (C² across the boundary)."""
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius}")
    c = np.atleast_1d(np.asarray(center, dtype=float))
    r2 = float(radius) ** 2
    dim = c.size

    def _q(pts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        diff = pts - c
        return diff, np.sum(diff * diff, axis=1) / r2

    def value(pts: np.ndarray) -> np.ndarray:
        _, q = _q(pts)
        return np.where(q < 1.0, (1.0 - q) ** 3, 0.0)

    def gradient(pts: np.ndarray) -> np.ndarray:
        diff, q = _q(pts)
        w = np.where(q < 1.0, -6.0 * (1.0 - q) ** 2 / r2, 0.0)
        return w[:, None] * diff

    def hessian(pts: np.ndarray) -> np.ndarray:
        diff, q = _q(pts)
        inside = q < 1.0
        radial = np.where(inside, 24.0 * (1.0 - q) / r2**2, 0.0)
        iso = np.where(inside, -6.0 * (1.0 - q) ** 2 / r2, 0.0)
        return radial[:, None, None] * np.einsum("mi,mj->mij", diff, diff) + iso[:, None, None] * np.eye(dim)

    bounds = FunctionBounds(1.0, _BUMP_GRADIENT_CONSTANT / radius, 6.0 / r2)
    return SmoothFunction(value, gradient, hessian, dim, bounds, (c, float(radius)), name="bump")


def gaussian_function(center: Any, width: float) -> SmoothFunction:
    """``exp(-|x-c|² / (2 w²))``."""
    if width <= 0:
        raise ValueError(f"width must be positive, got {width}")
    c = np.atleast_1d(np.asarray(center, dtype=float))
    w2 = float(width) ** 2
    dim = c.size

    def value(pts: np.ndarray) -> np.ndarray:
        diff = pts - c
        return np.exp(-0.5 * np.sum(diff * diff, axis=1) / w2)

    def gradient(pts: np.ndarray) -> np.ndarray:
        return -(pts - c) / w2 * value(pts)[:, None]

    def hessian(pts: np.ndarray) -> np.ndarray:
        diff = pts - c
        outer = np.einsum("mi,mj->mij", diff, diff) / w2**2 - np.eye(dim) / w2
        return outer * value(pts)[:, None, None]

    bounds = FunctionBounds(1.0, float(np.exp(-0.5)) / width, 1.0 / w2)
    return SmoothFunction(value, gradient, hessian, dim, bounds, None, name="gaussian")


def make_linear(b: Any, window: float) -> SmoothFunction:
    """``⟨b, x⟩``; bounds are declared over the window ``|x| ≤ window``."""
    vec = np.atleast_1d(np.asarray(b, dtype=float))
    dim = vec.size
    norm = float(np.linalg.norm(vec))

    def value(pts: np.ndarray) -> np.ndarray:
        return pts @ vec

    def gradient(pts: np.ndarray) -> np.ndarray:
        return np.tile(vec, (pts.shape[0], 1))

    def hessian(pts: np.ndarray) -> np.ndarray:
        return np.zeros((pts.shape[0], dim, dim))

    return SmoothFunction(value, gradient, hessian, dim, FunctionBounds(norm * window, norm, 0.0), name="linear")


def constant_function(value: float, dim: int) -> SmoothFunction:
    c = float(value)
    return SmoothFunction(
        lambda p: np.full(p.shape[0], c),
        lambda p: np.zeros((p.shape[0], dim)),
        lambda p: np.zeros((p.shape[0], dim, dim)),
        dim,
        FunctionBounds(abs(c), 0.0, 0.0),
        name="constant",
    )


def function_from_dict(data: Any, dim: int, path: str = "f") -> SmoothFunction:
    """Build a named test function from its JSON form."""
    if not isinstance(data, dict):
        raise ConfigError("invalid test function", [f"{path}: expected an object"])
    kind = data.get("type")
    center = data.get("center", [0.0] * dim)
    if not isinstance(center, list) or len(center) != dim:
        raise ConfigError("invalid test function", [f"{path}.center: expected {dim} numbers"])
    if kind == "bump":
        radius = data.get("radius", 1.0)
        if not isinstance(radius, (int, float)) or radius <= 0:
            raise ConfigError("invalid test function", [f"{path}.radius: must be a positive number"])
        return make_bump(center, float(radius))
    if kind == "gaussian":
        width = data.get("width", 1.0)
        if not isinstance(width, (int, float)) or width <= 0:
            raise ConfigError("invalid test function", [f"{path}.width: must be a positive number"])
        return gaussian_function(center, float(width))
    if kind == "constant":
        return constant_function(float(data.get("value", 1.0)), dim)
    raise ConfigError("invalid test function", [f"{path}.type: unknown test function {kind!r}"])
