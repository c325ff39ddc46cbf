"""Result objects returned by the identity checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class CheckResult:
    """Outcome of an identity check; truthy when the check passed.

    ``discrepancy`` describes the first disagreement (None on success) and
    ``detail`` carries the parameters or measured errors.
    """

    passed: bool
    discrepancy: Any = None
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return bool(self.passed)

    @classmethod
    def compare(cls, a, b, detail: dict | None = None) -> "CheckResult":
        """Compare two series (QSeries or BiSeries) on their common truncation."""
        d = a.first_discrepancy(b)
        if d is None and a.trunc != b.trunc:
            d = {"truncation": [a.trunc, b.trunc]}
        return cls(d is None, d, dict(detail or {}))

    def to_json(self) -> dict:
        return {"passed": bool(self.passed), "discrepancy": _jsonable(self.discrepancy),
                "detail": _jsonable(self.detail)}


def _jsonable(x):
    from fractions import Fraction

    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return x.to_json()
    return str(x)
