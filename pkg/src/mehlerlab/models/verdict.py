"""Verdict records emitted by every check.

A check passes only when its discrepancy is within the stated budget; an
inaccurate surrogate or an unresolved diagnostic is *inconclusive*, never a
failure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from mehlerlab.core.constants import EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_PASS

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [_jsonable(value.real), _jsonable(value.imag)]
    if isinstance(value, (float, np.floating)):
        v = float(value)
        return v if np.isfinite(v) else str(v)
    return value


@dataclass(frozen=True)
class Verdict:
    """Outcome of one numerical check.

    Parameters
    ----------
    check:
        Short name of the check, e.g. ``"cauchy_residual"``.
    identity:
        Tag of the identity being verified.
    inputs:
        JSON-able description of the inputs.
    discrepancy:
        Measured deviation.
    budget:
        Allowed deviation.
    status:
        ``"pass"``, ``"fail"`` or ``"inconclusive"``.
    details:
        Extra diagnostics (method used, error estimates, ...).
    """

    check: str
    identity: str
    inputs: dict[str, Any]
    discrepancy: float
    budget: float
    status: str
    details: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def compare(
        cls,
        check: str,
        identity: str,
        inputs: dict[str, Any],
        discrepancy: float,
        budget: float,
        details: dict[str, Any] | None = None,
    ) -> Verdict:
        """Pass iff ``discrepancy ≤ budget``; a non-finite discrepancy is inconclusive."""
        if not np.isfinite(discrepancy):
            status = INCONCLUSIVE
        else:
            status = PASS if discrepancy <= budget else FAIL
        return cls(check, identity, inputs, float(discrepancy), float(budget), status, dict(details or {}))

    def rescaled(self, scale: float) -> Verdict:
        """Re-compare against ``scale · budget``; inconclusive verdicts stay inconclusive."""
        if self.status == INCONCLUSIVE or scale == 1.0:
            return self
        return Verdict.compare(
            self.check,
            self.identity,
            self.inputs,
            self.discrepancy,
            self.budget * scale,
            self.details | {"tol_scale": scale},
        )

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict[str, Any]:
        return {
            "check": self.check,
            "identity": self.identity,
            "inputs": _jsonable(self.inputs),
            "discrepancy": _jsonable(self.discrepancy),
            "budget": _jsonable(self.budget),
            "status": self.status,
            "details": _jsonable(self.details),
        }


def exit_code(verdicts: list[Verdict]) -> int:
    """0 when all pass, 1 if any fails, otherwise 2 if any is inconclusive."""
    statuses = {v.status for v in verdicts}
    if FAIL in statuses:
        return EXIT_FAIL
    if INCONCLUSIVE in statuses:
        return EXIT_INCONCLUSIVE
    return EXIT_PASS
