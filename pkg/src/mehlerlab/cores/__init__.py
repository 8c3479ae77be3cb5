"""Core functions φ_{a,h} and the measure-equation check on empirical laws."""

from mehlerlab.cores.fpk import FPK_COLUMNS, FPKReport, fpk_residual
from mehlerlab.cores.phi import (
    D1Function,
    apply_L_phi,
    eval_phi,
    phi_as_smooth_function,
    phi_generator_gap,
    phi_semigroup_identity,
)

__all__ = [
    "FPK_COLUMNS",
    "D1Function",
    "FPKReport",
    "apply_L_phi",
    "eval_phi",
    "fpk_residual",
    "phi_as_smooth_function",
    "phi_generator_gap",
    "phi_semigroup_identity",
]
