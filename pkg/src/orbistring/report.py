"""Outcome of an identity sweep: pass, or the first failing witness."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckReport:
    name: str
    passed: bool
    checked: int = 0
    witness: Any = None
    residual: Any = None
    details: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name} ({self.checked} cases)"
        if not self.passed:
            text += f": witness={self.witness!r} residual={self.residual!r}"
        return text

    def as_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "witness": None if self.witness is None else repr(self.witness),
            "residual": None if self.residual is None else repr(self.residual),
        }
