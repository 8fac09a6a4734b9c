"""Machine-checkable reports and canonical JSON emission."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


@dataclass
class WitnessReport:
    """Outcome of an audit: ``passed`` holds exactly when ``violations`` is empty."""

    violations: list = field(default_factory=list)
    artifacts: dict = field(default_factory=dict)
    stats: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def fail(self, kind: str, **details: Any) -> None:
        self.violations.append({"kind": kind, **details})

    def first(self) -> dict | None:
        return self.violations[0] if self.violations else None

    def to_dict(self) -> dict:
        return {
            "pass": self.passed,
            "violations": self.violations,
            "artifacts": self.artifacts,
            "stats": self.stats,
        }


def _plain(obj):
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if isinstance(obj, tuple):
        return list(obj)
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), default=_plain) + "\n"
