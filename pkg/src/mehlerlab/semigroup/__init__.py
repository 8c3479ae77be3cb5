"""The OU semigroup: exact trig images, Monte Carlo evaluation and identity checks."""

from mehlerlab.semigroup.checks import (
    cauchy_check,
    commutation_check,
    continuity_profile,
    core_identity_check,
    fourier_commutation_lhs,
    integral_forms_check,
    ito_truncation_gap,
    support_spread,
)
from mehlerlab.semigroup.engine import (
    apply_Pt_mc,
    apply_Pt_trig,
    cauchy_residual,
    mc_mean,
    semigroup_image,
    semigroup_law_residual,
)

__all__ = [
    "apply_Pt_mc",
    "apply_Pt_trig",
    "cauchy_check",
    "cauchy_residual",
    "commutation_check",
    "continuity_profile",
    "core_identity_check",
    "fourier_commutation_lhs",
    "integral_forms_check",
    "ito_truncation_gap",
    "mc_mean",
    "semigroup_image",
    "semigroup_law_residual",
    "support_spread",
]
