"""Tests for mehlerlab.core.paths."""

from __future__ import annotations

from pathlib import Path

from mehlerlab.core.paths import RunPaths


class TestRunPaths:
    def test_base_is_experiment_folder(self, tmp_path: Path) -> None:
        rp = RunPaths(tmp_path, "cauchy")
        assert rp.base == tmp_path / "cauchy"
        assert rp.experiment == "cauchy"

    def test_verdicts_file(self, tmp_path: Path) -> None:
        assert RunPaths(tmp_path, "fpk").verdicts() == tmp_path / "fpk" / "verdicts.json"

    def test_tables(self, tmp_path: Path) -> None:
        assert RunPaths(tmp_path, "ito-gap").table("ito_gap") == tmp_path / "ito-gap" / "ito_gap.csv"

    def test_ensemble_files(self, tmp_path: Path) -> None:
        rp = RunPaths(tmp_path, "simulate")
        assert rp.ensemble_csv() == tmp_path / "simulate" / "paths.csv"
        assert rp.ensemble_array() == tmp_path / "simulate" / "paths.npy"
        assert rp.ensemble_meta() == tmp_path / "simulate" / "paths.meta.json"

    def test_log_dir_is_shared(self, tmp_path: Path) -> None:
        assert RunPaths(tmp_path, "approx").log_dir() == tmp_path / "logs"

    def test_ensure_dir(self, tmp_path: Path) -> None:
        rp = RunPaths(tmp_path / "out", "cauchy")
        rp.ensure_dir()
        assert rp.base.is_dir()
        rp.ensure_dir()
