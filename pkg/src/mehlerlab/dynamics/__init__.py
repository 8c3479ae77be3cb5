"""OU dynamics: matrix exponentials, exact marginals and path simulation."""

from mehlerlab.dynamics.flow import (
    ExponentProfile,
    adjoint_flow,
    chapman_kolmogorov_residual,
    decay_factor,
    exponent_integral,
    exponent_integrals,
    marginal_char,
    matrix_exp,
    matrix_exp_batch,
)
from mehlerlab.dynamics.simulator import PathSimulator, simulate_paths, terminal_samples

__all__ = [
    "ExponentProfile",
    "PathSimulator",
    "adjoint_flow",
    "chapman_kolmogorov_residual",
    "decay_factor",
    "exponent_integral",
    "exponent_integrals",
    "marginal_char",
    "matrix_exp",
    "matrix_exp_batch",
    "simulate_paths",
    "terminal_samples",
]
