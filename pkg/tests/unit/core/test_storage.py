"""Tests for mehlerlab.core.storage."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest

from mehlerlab.core.storage import FileStore, format_cell


class TestFormatCell:
    def test_float_uses_17_significant_digits(self) -> None:
        assert format_cell(0.1) == "0.10000000000000001"

    def test_numpy_float(self) -> None:
        assert format_cell(np.float64(1.0) / 3.0) == format(1.0 / 3.0, ".17g")

    def test_int_and_bool(self) -> None:
        assert format_cell(3) == "3"
        assert format_cell(np.int64(4)) == "4"
        assert format_cell(True) == "true"
        assert format_cell(np.bool_(False)) == "false"

    def test_non_finite(self) -> None:
        assert format_cell(float("nan")) == "nan"
        assert format_cell(float("inf")) == "inf"


class TestReadText:
    def test_read_existing_file(self, tmp_path: Path) -> None:
        p = tmp_path / "test.txt"
        p.write_text("hello world", encoding="utf-8")
        assert FileStore.read_text(p) == "hello world"

    def test_read_missing_file_returns_default(self, tmp_path: Path) -> None:
        p = tmp_path / "missing.txt"
        assert FileStore.read_text(p) == ""
        assert FileStore.read_text(p, "fallback") == "fallback"

    def test_strict_missing_file_raises(self, tmp_path: Path) -> None:
        with pytest.raises(FileNotFoundError):
            FileStore.read_text(tmp_path / "missing.txt", strict=True)


class TestWriteText:
    def test_atomic_write_no_leftover_tmp(self, tmp_path: Path) -> None:
        p = tmp_path / "out.txt"
        FileStore.write_text(p, "data")
        assert p.read_text(encoding="utf-8") == "data"
        assert not p.with_suffix(".txt.tmp").exists()

    def test_creates_parent_dirs(self, tmp_path: Path) -> None:
        p = tmp_path / "sub" / "dir" / "file.txt"
        FileStore.write_text(p, "nested")
        assert p.read_text(encoding="utf-8") == "nested"


class TestJson:
    def test_sorted_keys(self, tmp_path: Path) -> None:
        p = tmp_path / "out.json"
        FileStore.write_json(p, {"b": 1, "a": 2})
        text = p.read_text(encoding="utf-8")
        assert text.index('"a"') < text.index('"b"')
        assert json.loads(text) == {"a": 2, "b": 1}

    def test_read_corrupt_json(self, tmp_path: Path) -> None:
        p = tmp_path / "bad.json"
        p.write_text("{{{", encoding="utf-8")
        assert FileStore.read_json(p, "fallback") == "fallback"

    def test_read_json_null(self, tmp_path: Path) -> None:
        p = tmp_path / "null.json"
        p.write_text("null", encoding="utf-8")
        assert FileStore.read_json(p, {"default": True}) == {"default": True}

    def test_strict_read_json(self, tmp_path: Path) -> None:
        p = tmp_path / "cfg.json"
        p.write_text('{"a": [1, 2]}', encoding="utf-8")
        assert FileStore.read_json(p, strict=True) == {"a": [1, 2]}
        with pytest.raises(FileNotFoundError):
            FileStore.read_json(tmp_path / "missing.json", strict=True)
        p.write_text("{{{", encoding="utf-8")
        with pytest.raises(json.JSONDecodeError):
            FileStore.read_json(p, strict=True)


class TestWriteCsv:
    def test_header_and_rows(self, tmp_path: Path) -> None:
        p = tmp_path / "t.csv"
        FileStore.write_csv(p, ["n", "gap"], [[1, 0.5], [2, 0.25]])
        assert p.read_text(encoding="utf-8") == "n,gap\n1,0.5\n2,0.25\n"

    def test_identical_inputs_identical_bytes(self, tmp_path: Path) -> None:
        rows = [[0.1 * k, k] for k in range(5)]
        FileStore.write_csv(tmp_path / "a.csv", ["x", "k"], rows)
        FileStore.write_csv(tmp_path / "b.csv", ["x", "k"], rows)
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


class TestWriteArray:
    def test_roundtrip(self, tmp_path: Path) -> None:
        arr = np.arange(24, dtype=float).reshape(2, 3, 4)
        p = tmp_path / "paths.npy"
        FileStore.write_array(p, arr)
        np.testing.assert_array_equal(np.load(p), arr)
        assert not (tmp_path / "paths.npy.tmp").exists()
