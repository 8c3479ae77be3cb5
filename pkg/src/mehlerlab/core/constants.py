"""Shared constants for mehlerlab.

Numerical defaults used across the engines are centralised here so that the
tolerances quoted in verdict records have a single source of truth.
"""

from __future__ import annotations

# ---------------------------------------------------------------------------
# Lévy measures: quadrature and small-jump handling.
# ---------------------------------------------------------------------------
DEFAULT_SMALL_JUMP_CUT: float = 0.01
LEVY_QUAD_EPSABS: float = 1e-10
LEVY_QUAD_EPSREL: float = 1e-10
QUAD_LIMIT: int = 400

# Relative tail mass below which an unbounded tail is considered resolved.
TAIL_MASS_TOLERANCE: float = 1e-12
TAIL_SEARCH_MAX_RADIUS: float = 1e6

# Truncated isotropic stable exponent: direct quadrature up to this |u|·r_max,
# Bessel tail recursion beyond it.
STABLE_TAIL_SWITCH: float = 200.0
BESSEL_TAIL_TERMS: int = 80
BESSEL_TAIL_TOLERANCE: float = 1e-17

# Split radius between the inner shell and the annulus for exponent quadrature.
QUADRATURE_SPLIT_RADIUS: float = 0.1

# Angular quadrature sizes for polar integration (per dimension).
ANGULAR_NODES_2D: int = 128
POLAR_NODES_3D: int = 16
AZIMUTH_NODES_3D: int = 32

# Tolerances for symmetric / positive-semidefinite checks on Q.
SYMMETRY_TOLERANCE: float = 1e-12
PSD_TOLERANCE: float = 1e-12

# ---------------------------------------------------------------------------
# Generator: jump-integral tolerances.
# ---------------------------------------------------------------------------
GENERATOR_EPSABS: float = 1e-9
GENERATOR_EPSREL: float = 1e-7

# Points per vector quadrature when L0 is evaluated on a batch.
L0_BATCH_CHUNK: int = 2048

# ---------------------------------------------------------------------------
# Dynamics: time quadrature, path scheme.
# ---------------------------------------------------------------------------
TIME_QUAD_EPSABS: float = 1e-10
CAUCHY_QUAD_EPSABS: float = 1e-9
DEFAULT_MAX_STEP: float = 0.01
STEPS_PER_HORIZON: int = 100
CHEBYSHEV_START_DEGREE: int = 32
CHEBYSHEV_MAX_DEGREE: int = 512
CHEBYSHEV_TAIL_TOLERANCE: float = 1e-15

# Paths per RNG stream block; outputs do not depend on the thread count.
PATH_BLOCK_SIZE: int = 8192

# ---------------------------------------------------------------------------
# Test functions: approximation construction.
# ---------------------------------------------------------------------------
MAX_APPROX_DIM: int = 3
APPROX_OVERSAMPLE: int = 4
MAX_APPROX_GRID_POINTS: int = 2**24
D0_TOLERANCE: float = 1e-6
SPHERE_POINTS_2D: int = 64
SPHERE_POINTS_3D: int = 128

# ---------------------------------------------------------------------------
# Checks: Monte Carlo and verdict budgets.
# ---------------------------------------------------------------------------
STDERR_MULTIPLIER: float = 4.0
ROUNDOFF_FLOOR: float = 1e-12
# Quadrature estimates above this (and above the rest of a budget) leave a check undecided.
QUADRATURE_ERROR_CEILING: float = 1e-6
SCHEME_BIAS_ALLOWANCE: float = 0.01
MIN_MC_PATHS: int = 100
MIN_FPK_PATHS: int = 1000
DEFAULT_SNAPSHOTS: int = 50
CAUCHY_TOLERANCE: float = 1e-5
PHI_IDENTITY_TOLERANCE: float = 1e-7
PHI_GENERATOR_TOLERANCE: float = 1e-6
CHAPMAN_KOLMOGOROV_TOLERANCE: float = 1e-8
PHI_QUAD_EPSABS: float = 1e-11
APPROX_BOUND_SLACK: float = 0.05
APPROX_POINTWISE_TOLERANCE: float = 1e-3

# Fourier surrogate of P_t f in d = 1: grid points per support radius.
FOURIER_POINTS_PER_RADIUS: int = 64

# ---------------------------------------------------------------------------
# Spectral truncation.
# ---------------------------------------------------------------------------
TRACE_CHECK_DIMENSION: int = 1000
TRACE_CHECK_TOLERANCE: float = 1e-10
RAABE_TEST_INDEX: int = 10_000
SWEEP_TOLERANCE: float = 1e-6
# Successive-d residual changes from this dimension on must settle below the bound.
SWEEP_STABLE_FROM_DIM: int = 8
SWEEP_CHANGE_TOLERANCE: float = 1e-7

# ---------------------------------------------------------------------------
# CLI / output.
# ---------------------------------------------------------------------------
EXPERIMENTS: tuple[str, ...] = (
    "char-check",
    "simulate",
    "cauchy",
    "commutation",
    "ito-gap",
    "approx",
    "phi-core",
    "fpk",
    "dim-sweep",
)

# Relative agreement of closed-form and quadrature exponents in char-check.
CHAR_CHECK_TOLERANCE: float = 1e-8

# Default experiment horizons and ensemble sizes when params omit them.
DEFAULT_HORIZON: float = 1.0
DEFAULT_SIM_PATHS: int = 2000
DEFAULT_SIM_SNAPSHOTS: int = 10
DEFAULT_FPK_PATHS: int = 2000
DEFAULT_TRUNCATION_LEVELS: tuple[float, ...] = (1.0, 2.0, 4.0, 8.0)
DEFAULT_APPROX_SCHEDULE: tuple[tuple[int, int], ...] = ((4, 32), (8, 128))
DEFAULT_SHELL_RADII: tuple[float, ...] = (2.0, 4.0, 8.0)
DEFAULT_SWEEP_DIMS: tuple[int, ...] = (1, 2, 4, 8, 16, 32)

OUT_DIR_ENV_VAR: str = "OU_LEVY_OUT"
DEFAULT_OUT_DIR: str = "results"
DEFAULT_SEED: int = 20240501
CSV_FLOAT_FORMAT: str = ".17g"
VERDICTS_FILENAME: str = "verdicts.json"
LOG_NAME: str = "mehlerlab"

EXIT_PASS: int = 0
EXIT_FAIL: int = 1
EXIT_INCONCLUSIVE: int = 2
