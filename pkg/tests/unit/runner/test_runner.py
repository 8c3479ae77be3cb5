"""Tests for mehlerlab.runner.runner."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from mehlerlab.core.config import ExperimentConfig
from mehlerlab.models.verdict import INCONCLUSIVE, Verdict
from mehlerlab.runner import EXPERIMENT_HANDLERS, ExperimentResult, ExperimentRunner, Table


def _fake_result(cfg: ExperimentConfig) -> ExperimentResult:
    verdicts = [
        Verdict.compare("first", "a = b", {"seed": cfg.seed}, 0.5, 1.0),
        Verdict.compare("second", "c = d", {}, 0.0, 1e-6),
    ]
    table = Table("numbers", ["k", "value"], [[1, 0.25], [2, True]])
    return ExperimentResult(verdicts, [table])


@pytest.fixture
def fake_cauchy(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setitem(EXPERIMENT_HANDLERS, "cauchy", _fake_result)


@pytest.mark.usefixtures("fake_cauchy")
class TestExperimentRunner:
    def test_writes_verdicts_and_tables(self, tmp_path: Path) -> None:
        cfg = ExperimentConfig(experiment="cauchy", seed=3, out_dir=str(tmp_path))
        code = ExperimentRunner(cfg, echo=False).run()
        assert code == 0
        doc = json.loads((tmp_path / "cauchy" / "verdicts.json").read_text(encoding="utf-8"))
        assert doc["exit_code"] == 0
        assert doc["seed"] == 3
        assert [v["check"] for v in doc["verdicts"]] == ["first", "second"]
        csv_text = (tmp_path / "cauchy" / "numbers.csv").read_text(encoding="utf-8")
        assert csv_text.splitlines() == ["k,value", "1,0.25", "2,true"]

    def test_tol_scale_tightens_budgets(self, tmp_path: Path) -> None:
        cfg = ExperimentConfig(experiment="cauchy", tol_scale=0.1, out_dir=str(tmp_path))
        assert ExperimentRunner(cfg, echo=False).run() == 1
        doc = json.loads((tmp_path / "cauchy" / "verdicts.json").read_text(encoding="utf-8"))
        assert doc["verdicts"][0]["status"] == "fail"
        assert doc["verdicts"][0]["budget"] == pytest.approx(0.1)

    def test_inconclusive_exit_code(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        def unresolved(cfg: ExperimentConfig) -> ExperimentResult:
            return ExperimentResult([Verdict("only", "e = f", {}, float("nan"), 1.0, INCONCLUSIVE)])

        monkeypatch.setitem(EXPERIMENT_HANDLERS, "cauchy", unresolved)
        cfg = ExperimentConfig(experiment="cauchy", out_dir=str(tmp_path))
        assert ExperimentRunner(cfg, echo=False).run() == 2

    def test_summary_is_printed(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        cfg = ExperimentConfig(experiment="cauchy", out_dir=str(tmp_path))
        ExperimentRunner(cfg).run()
        out = capsys.readouterr().out
        assert "PASS" in out
        assert "first" in out

    def test_paths_follow_config(self, tmp_path: Path) -> None:
        runner = ExperimentRunner(ExperimentConfig(experiment="cauchy", out_dir=str(tmp_path)), echo=False)
        assert runner.paths.base == tmp_path / "cauchy"
