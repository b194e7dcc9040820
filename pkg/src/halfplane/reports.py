"""Structured verification results."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

__all__ = ["DiagnosticReport", "PROVENANCES"]

PROVENANCES = ("paper-bound", "trivial", "derived-oracle")


def _jsonable(value: Any):
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in sorted(value.items())}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "item"):
        return _jsonable(value.item())
    return value


@dataclass(frozen=True)
class DiagnosticReport:
    """One check: ``passed`` is recomputable from the stored numbers.

    ``mode='target'`` passes when ``|measured - bound_or_target| <= tolerance``;
    ``mode='upper'`` when ``measured <= bound_or_target + tolerance``;
    ``mode='lower'`` when ``measured >= bound_or_target - tolerance``.
    """

    check_id: str
    parameters: dict = field(default_factory=dict)
    measured: complex | float = 0.0
    bound_or_target: complex | float = 0.0
    tolerance: float = 0.0
    provenance: str = "derived-oracle"
    mode: str = "target"
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        if self.mode not in ("target", "upper", "lower"):
            raise ValueError(f"unknown mode {self.mode!r}")

    @property
    def passed(self) -> bool:
        m, b, tol = self.measured, self.bound_or_target, self.tolerance
        if isinstance(m, float) and math.isnan(m):
            return False
        if self.mode == "target":
            return bool(abs(m - b) <= tol)
        if self.mode == "upper":
            return bool(m.real <= b.real + tol) if isinstance(m, complex) else bool(m <= b + tol)
        return bool(m.real >= b.real - tol) if isinstance(m, complex) else bool(m >= b - tol)

    def to_dict(self) -> dict:
        return {
            "check": self.check_id,
            "params": _jsonable(self.parameters),
            "value": _jsonable(self.measured),
            "bound": _jsonable(self.bound_or_target),
            "tolerance": _jsonable(self.tolerance),
            "mode": self.mode,
            "pass": self.passed,
            "provenance": self.provenance,
            "detail": _jsonable(self.detail),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)
