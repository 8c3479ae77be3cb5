"""Per-experiment output path resolution.

Encapsulates the layout ``<out>/<experiment>/`` with one verdict file, one
CSV per table and a shared ``logs/`` directory.
"""

from __future__ import annotations

from pathlib import Path

from mehlerlab.core.constants import VERDICTS_FILENAME


class RunPaths:
    """Resolve the artifact paths of one experiment run.

    >>> rp = RunPaths(Path("/data"), "cauchy")
    >>> rp.base
    PosixPath('/data/cauchy')
    >>> rp.table("residuals")
    PosixPath('/data/cauchy/residuals.csv')
    """

    def __init__(self, out_dir: Path, experiment: str) -> None:
        self.out_dir: Path = out_dir
        self.experiment: str = experiment
        self.base: Path = out_dir / experiment

    def verdicts(self) -> Path:
        return self.base / VERDICTS_FILENAME

    def table(self, name: str) -> Path:
        return self.base / f"{name}.csv"

    # -- path ensembles ---------------------------------------------------

    def ensemble_csv(self, name: str = "paths") -> Path:
        return self.base / f"{name}.csv"

    def ensemble_array(self, name: str = "paths") -> Path:
        return self.base / f"{name}.npy"

    def ensemble_meta(self, name: str = "paths") -> Path:
        return self.base / f"{name}.meta.json"

    def log_dir(self) -> Path:
        return self.out_dir / "logs"

    def ensure_dir(self) -> None:
        """Create the experiment folder if it does not already exist."""
        self.base.mkdir(parents=True, exist_ok=True)

    def __repr__(self) -> str:
        return f"RunPaths(experiment={self.experiment!r}, base={self.base!r})"
