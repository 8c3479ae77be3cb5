"""Command-line surface: one subcommand per experiment plus ``run``.

``run`` takes the experiment from the config's ``experiment`` tag; a named
subcommand must agree with that tag.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from mehlerlab.core.config import ExperimentConfig
from mehlerlab.core.constants import EXIT_FAIL, EXPERIMENTS, LOG_NAME
from mehlerlab.core.exceptions import ConfigError, MehlerLabError
from mehlerlab.core.logging_setup import reset_logger, setup_logger
from mehlerlab.core.paths import RunPaths
from mehlerlab.runner.runner import ExperimentRunner

logger = logging.getLogger(__name__)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, required=True, help="JSON experiment config")
    parser.add_argument("--seed", type=int, default=None, help="master seed (overrides the config)")
    parser.add_argument("--out", type=Path, default=None, help="output directory (OU_LEVY_OUT wins)")
    parser.add_argument("--tol-scale", type=float, default=None, help="multiply every verdict budget")
    parser.add_argument("--threads", type=int, default=None, help="worker threads (default: logical CPUs)")
    parser.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG level")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mehlerlab",
        description="Numerical checks of Ornstein-Uhlenbeck semigroups driven by Levy noise.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    _add_common(sub.add_parser("run", help="run the experiment named in the config"))
    for name in EXPERIMENTS:
        _add_common(sub.add_parser(name, help=f"run the {name} experiment"))
    return parser


def run(config_path: Path, overrides: dict[str, object], command: str = "run", verbose: bool = False) -> int:
    """Load, validate and execute one experiment; return the exit code."""
    try:
        config = ExperimentConfig.from_file(config_path, overrides)
        if command != "run" and command != config.experiment:
            raise ConfigError(
                "subcommand does not match config",
                [f"experiment: config names {config.experiment!r} but the subcommand is {command!r}"],
            )
    except MehlerLabError as exc:
        logger.error("%s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL

    setup_logger(LOG_NAME, RunPaths(config.out_path, config.experiment).log_dir(),
                 logging.DEBUG if verbose else logging.INFO)
    try:
        return ExperimentRunner(config).run()
    except MehlerLabError as exc:
        logger.error("%s failed: %s", config.experiment, exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    finally:
        reset_logger(LOG_NAME)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {"seed": args.seed, "out": args.out, "tol_scale": args.tol_scale, "threads": args.threads}
    return run(args.config, overrides, args.command, args.verbose)
