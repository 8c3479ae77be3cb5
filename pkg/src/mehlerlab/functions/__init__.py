"""Test-function algebra: bumps, Gaussians, trig approximation and core diagnostics."""

from mehlerlab.functions.approximation import Approximation, approximate, mollify_periodize
from mehlerlab.functions.bump import (
    constant_function,
    function_from_dict,
    gaussian_function,
    make_bump,
    make_linear,
)
from mehlerlab.functions.membership import D0Report, d0_membership

__all__ = [
    "Approximation",
    "D0Report",
    "approximate",
    "constant_function",
    "d0_membership",
    "function_from_dict",
    "gaussian_function",
    "make_bump",
    "make_linear",
    "mollify_periodize",
]
