"""Verification reports shared by the ``verify_*`` functions and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    cases: int = 0
    witness: str | None = None

    def to_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "cases": self.cases}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        c = Check(name, True)
        self.checks.append(c)
        return c

    def record(self, name: str, ok: bool, witness=None):
        """Count one case; keep only the first failing witness per check."""
        c = self.check(name)
        c.cases += 1
        if not ok and c.passed:
            c.passed = False
            c.witness = str(witness)
        return ok

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def merge(self, other: "Report") -> "Report":
        for c in other.checks:
            self.checks.append(Check(f"{other.title}: {c.name}", c.passed, c.cases, c.witness))
        return self

    def to_dict(self) -> dict:
        out = {"title": self.title, "passed": self.passed,
               "checks": [c.to_dict() for c in self.checks]}
        if self.data:
            out["data"] = self.data
        return out

    def __str__(self):
        lines = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            tail = f"  witness: {c.witness}" if c.witness else ""
            lines.append(f"  [{mark}] {c.name} ({c.cases} cases){tail}")
        return "\n".join(lines)
