"""Safe, atomic file I/O with logging.

Every artifact an experiment emits (verdict JSON, CSV tables, path
ensembles) goes through :class:`FileStore`, so partial files are never left
behind and floats are always rendered the same way.
"""

from __future__ import annotations

import contextlib
import csv
import io
import json
import logging
import os
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any

import numpy as np

from mehlerlab.core.constants import CSV_FLOAT_FORMAT

logger = logging.getLogger(__name__)


def format_cell(value: Any) -> str:
    """Render one CSV cell; floats use 17 significant digits."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), CSV_FLOAT_FORMAT)
    return str(value)


class FileStore:
    """Text, JSON, CSV and array I/O with logged failures."""

    # -- plain text -------------------------------------------------------

    @staticmethod
    def read_text(path: Path, default: str = "", *, strict: bool = False) -> str:
        """Read a text file, returning *default* if missing or unreadable.

        With ``strict=True`` the :class:`OSError` propagates instead.
        """
        try:
            return path.read_text(encoding="utf-8")
        except OSError as exc:
            if strict:
                raise
            logger.debug("read_text(%s) failed: %s", path, exc)
            return default

    @staticmethod
    def write_text(path: Path, content: str) -> None:
        """Atomic write via a ``.tmp`` sibling + :func:`os.replace`."""
        tmp = path.with_suffix(path.suffix + ".tmp")
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp.write_text(content, encoding="utf-8", newline="")
            os.replace(tmp, path)
        except OSError as exc:
            logger.error("write_text(%s) failed: %s", path, exc)
            with contextlib.suppress(OSError):
                tmp.unlink(missing_ok=True)
            raise

    # -- JSON -------------------------------------------------------------

    @staticmethod
    def read_json(path: Path, default: Any = None, *, strict: bool = False) -> Any:
        """Read a JSON file, returning *default* if missing, corrupt or ``null``.

        With ``strict=True`` a missing file raises :class:`OSError` and a
        corrupt one :class:`json.JSONDecodeError`.
        """
        try:
            data = json.loads(FileStore.read_text(path, strict=True))
        except (OSError, json.JSONDecodeError, TypeError) as exc:
            if strict:
                raise
            logger.debug("read_json(%s) failed: %s", path, exc)
            return default
        return data if data is not None else default

    @staticmethod
    def write_json(path: Path, data: Any) -> None:
        """Atomic JSON write with ``indent=2`` and sorted keys."""
        FileStore.write_text(path, json.dumps(data, indent=2, sort_keys=True) + "\n")

    # -- tables -----------------------------------------------------------

    @staticmethod
    def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
        """Atomic CSV write; every float cell uses :func:`format_cell`."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(list(header))
        for row in rows:
            writer.writerow([format_cell(v) for v in row])
        FileStore.write_text(path, buffer.getvalue())

    # -- arrays -----------------------------------------------------------

    @staticmethod
    def write_array(path: Path, array: np.ndarray) -> None:
        """Atomic ``.npy`` write (compact binary form of an ensemble)."""
        tmp = path.with_name(path.name + ".tmp")
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with tmp.open("wb") as fh:
                np.save(fh, np.ascontiguousarray(array), allow_pickle=False)
            os.replace(tmp, path)
        except OSError as exc:
            logger.error("write_array(%s) failed: %s", path, exc)
            with contextlib.suppress(OSError):
                tmp.unlink(missing_ok=True)
            raise
