"""Experiment runner: dispatch one experiment and write its artifacts.

Layout under ``<out>/<experiment>/``: ``verdicts.json`` (sorted keys), one
CSV per table and, for ``simulate``, the path ensemble.  Nothing
time-dependent goes into these files, so equal config and seed give
byte-identical output.
"""

from __future__ import annotations

import logging
import time
from typing import Any

import colorama
from colorama import Fore, Style

from mehlerlab.core.config import ExperimentConfig
from mehlerlab.core.paths import RunPaths
from mehlerlab.core.storage import FileStore
from mehlerlab.models.verdict import FAIL, INCONCLUSIVE, PASS, Verdict, exit_code
from mehlerlab.runner.experiments import EXPERIMENT_HANDLERS, ExperimentResult

logger = logging.getLogger(__name__)

colorama.init(autoreset=True)

_STATUS_COLOURS = {PASS: Fore.GREEN, FAIL: Fore.RED, INCONCLUSIVE: Fore.YELLOW}


class ExperimentRunner:
    """Run the experiment named by a validated config.

    Parameters
    ----------
    config:
        Validated experiment configuration.
    store:
        File I/O abstraction.
    echo:
        Print the coloured verdict summary to stdout.
    """

    def __init__(self, config: ExperimentConfig, store: FileStore | None = None, echo: bool = True) -> None:
        self._config = config
        self._store = store or FileStore()
        self._echo = echo
        self._paths = RunPaths(config.out_path, config.experiment)

    @property
    def paths(self) -> RunPaths:
        return self._paths

    # -- public API -----------------------------------------------------------

    def run(self) -> int:
        """Execute, write artifacts and return the exit code.

        Library errors (:class:`MehlerLabError`) propagate to the caller.
        """
        cfg = self._config
        handler = EXPERIMENT_HANDLERS[cfg.experiment]
        logger.info("Running %s (seed %d) into %s", cfg.experiment, cfg.seed, self._paths.base)

        started = time.perf_counter()
        result = handler(cfg)
        elapsed = time.perf_counter() - started

        verdicts = [v.rescaled(cfg.tol_scale) for v in result.verdicts]
        self._paths.ensure_dir()
        self._write_tables(result)
        code = exit_code(verdicts)
        self._store.write_json(self._paths.verdicts(), self._verdict_document(verdicts, code))

        for v in verdicts:
            if v.status == INCONCLUSIVE:
                logger.warning("%s inconclusive: %s", v.check, v.details)
        logger.info("%s finished in %.2fs with exit code %d", cfg.experiment, elapsed, code)
        if self._echo:
            self.print_summary(verdicts)
        return code

    def print_summary(self, verdicts: list[Verdict]) -> None:
        for v in verdicts:
            colour = _STATUS_COLOURS.get(v.status, "")
            print(
                f"{colour}{v.status.upper():<13}{Style.RESET_ALL}"
                f"{v.check:<28} discrepancy={v.discrepancy:.3e} budget={v.budget:.3e}"
            )

    # -- internals ------------------------------------------------------------

    def _write_tables(self, result: ExperimentResult) -> None:
        for table in result.tables:
            self._store.write_csv(self._paths.table(table.name), table.header, table.rows)
            logger.debug("wrote %s (%d rows)", table.name, len(table.rows))
        if result.ensemble is not None:
            result.ensemble.export(self._paths)

    def _verdict_document(self, verdicts: list[Verdict], code: int) -> dict[str, Any]:
        cfg = self._config
        return {
            "experiment": cfg.experiment,
            "seed": cfg.seed,
            "tol_scale": cfg.tol_scale,
            "exit_code": code,
            "verdicts": [v.to_dict() for v in verdicts],
        }
