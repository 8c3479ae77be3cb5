"""Type aliases used across mehlerlab signatures.

These aliases document intent at call sites without introducing runtime cost.
"""

from __future__ import annotations

from collections.abc import Callable
from typing import TypeAlias

import numpy as np

# A point or frequency in R^d, shape (d,).
Vector: TypeAlias = np.ndarray

# A batch of points, shape (m, d).
Points: TypeAlias = np.ndarray

# A d x d real matrix.
Matrix: TypeAlias = np.ndarray

# Vectorised scalar field: (m, d) -> (m,).
ScalarField: TypeAlias = Callable[[np.ndarray], np.ndarray]

# Check outcome tag: "pass", "fail" or "inconclusive".
Status: TypeAlias = str
