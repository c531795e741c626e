"""Structured results for the verification suites."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    """Outcome of one verification sweep.

    ``failures`` holds canonical one-line descriptions of every
    counterexample; the suite passed exactly when it is empty.  Reports
    are deterministic apart from ``wall_time``.
    """

    suite: str
    parameters: dict = field(default_factory=dict)
    cases: int = 0
    failures: list[str] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "parameters": self.parameters,
            "cases": self.cases,
            "failures": list(self.failures),
            "wall_time": self.wall_time,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationReport":
        return cls(
            suite=data["suite"],
            parameters=dict(data["parameters"]),
            cases=int(data["cases"]),
            failures=list(data["failures"]),
            wall_time=float(data["wall_time"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))

    def render_text(self) -> str:
        lines = [f"suite: {self.suite}"]
        if self.parameters:
            params = " ".join(f"{k}={v}" for k, v in sorted(self.parameters.items()))
            lines.append(f"parameters: {params}")
        lines.append(f"cases checked: {self.cases}")
        lines.append(f"failures: {len(self.failures)}")
        for f in self.failures:
            lines.append(f"  {f}")
        lines.append(f"wall time: {self.wall_time:.2f}s")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)
