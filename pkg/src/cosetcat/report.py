"""Pass/fail bookkeeping shared by the verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass
class Check:
    name: str
    status: str
    checked: int = 0
    witness: str | None = None

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def line(self) -> str:
        tag = self.status.upper()
        if self.status == PASS:
            return f"{tag}  {self.name} ({self.checked} checked)"
        if self.status == SKIP:
            return f"{tag}  {self.name}: {self.witness}"
        return f"{tag}  {self.name}: {self.witness}"

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "status": self.status, "checked": self.checked, "witness": self.witness}


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, ok: bool, checked: int = 0, witness: str | None = None) -> Check:
        c = Check(name, PASS if ok else FAIL, checked, None if ok else witness)
        self.checks.append(c)
        return c

    def skip(self, name: str, reason: str) -> Check:
        c = Check(name, SKIP, 0, reason)
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str = "") -> "Report":
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.checked, c.witness))
        return self

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __str__(self) -> str:
        lines = [f"== {self.title}: {'PASS' if self.passed else 'FAIL'}"]
        lines += ["  " + c.line() for c in self.checks]
        return "\n".join(lines)

    def to_dict(self) -> dict[str, Any]:
        return {"title": self.title, "passed": self.passed, "checks": [c.to_dict() for c in self.checks]}
