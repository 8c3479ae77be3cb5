"""Lévy triplets: measures, characteristic exponent, integration and sampling.

Re-exports the public API::

    from mehlerlab.levy import LevyTriplet, TemperedStable, char_exponent
"""

from mehlerlab.levy.exponent import char_exponent, jump_exponent_quad, quadrature_exponent
from mehlerlab.levy.integration import LevyMeasureReport, check_levy_measure, levy_integral
from mehlerlab.levy.measures import (
    CompoundPoisson,
    CoordinateAxis,
    FiniteAtomic,
    GaussianLaw,
    IsotropicStableRadial,
    LevyMeasure,
    NoJumps,
    PointMassLaw,
    Superposition,
    TemperedStable,
    UniformBallLaw,
    measure_from_dict,
)
from mehlerlab.levy.sampling import sample_increment, small_jump_bias_bound, uses_gaussian_substitution
from mehlerlab.levy.triplet import LevyTriplet

__all__ = [
    "CompoundPoisson",
    "CoordinateAxis",
    "FiniteAtomic",
    "GaussianLaw",
    "IsotropicStableRadial",
    "LevyMeasure",
    "LevyMeasureReport",
    "LevyTriplet",
    "NoJumps",
    "PointMassLaw",
    "Superposition",
    "TemperedStable",
    "UniformBallLaw",
    "char_exponent",
    "check_levy_measure",
    "jump_exponent_quad",
    "levy_integral",
    "measure_from_dict",
    "quadrature_exponent",
    "sample_increment",
    "small_jump_bias_bound",
    "uses_gaussian_substitution",
]
