#!/usr/bin/env python3
"""Entry point for the mehlerlab experiments.

Usage::

    python scripts/run_experiment.py cauchy --config configs/cauchy_gaussian_1d.json
    python scripts/run_experiment.py run --config configs/fpk_compound_poisson.json --seed 42 --out results
"""

from __future__ import annotations

import sys
from pathlib import Path

_SRC_DIR = Path(__file__).resolve().parent.parent / "src"
if _SRC_DIR.is_dir() and str(_SRC_DIR) not in sys.path:
    sys.path.insert(0, str(_SRC_DIR))


def main() -> None:
    from mehlerlab.runner.cli import main as cli_main

    sys.exit(cli_main())


if __name__ == "__main__":
    main()
