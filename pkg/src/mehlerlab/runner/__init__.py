"""Experiment dispatch, artifact writing and the command-line surface."""

from mehlerlab.runner.cli import build_parser, main, run
from mehlerlab.runner.experiments import EXPERIMENT_HANDLERS, ExperimentResult, Table
from mehlerlab.runner.runner import ExperimentRunner

__all__ = [
    "EXPERIMENT_HANDLERS",
    "ExperimentResult",
    "ExperimentRunner",
    "Table",
    "build_parser",
    "main",
    "run",
]
