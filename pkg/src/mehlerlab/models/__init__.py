"""Domain data models for mehlerlab.

Re-exports the model classes for convenient imports::

    from mehlerlab.models import OUModel, TrigPolynomial, SmoothFunction, Verdict
"""

from mehlerlab.models.cores import EmpiricalMeasure
from mehlerlab.models.functions import FunctionBounds, SmoothFunction, TrigPolynomial
from mehlerlab.models.ou import EnsembleMeta, OUModel, PathEnsemble
from mehlerlab.models.spectral import NoiseRecipe, SequenceRecipe, SpectralModel
from mehlerlab.models.types import Matrix, Points, ScalarField, Status, Vector
from mehlerlab.models.verdict import Verdict, exit_code

__all__ = [
    "EmpiricalMeasure",
    "EnsembleMeta",
    "FunctionBounds",
    "Matrix",
    "NoiseRecipe",
    "OUModel",
    "PathEnsemble",
    "Points",
    "ScalarField",
    "SequenceRecipe",
    "SmoothFunction",
    "SpectralModel",
    "Status",
    "TrigPolynomial",
    "Vector",
    "Verdict",
    "exit_code",
]
