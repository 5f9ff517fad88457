"""Machine-readable verification records."""
from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

__all__ = ["VerificationReport", "Witness", "timed", "STATUSES"]

STATUSES = ("pass", "fail", "inconclusive")


@dataclass(frozen=True)
class Witness:
    location: str
    expected: str
    actual: str

    def as_list(self) -> list[str]:
        return [self.location, self.expected, self.actual]


@dataclass
class VerificationReport:
    """One identity instance.  ``status == 'fail'`` exactly when witnesses exist."""

    suite: str
    name: str
    params: dict[str, Any] = field(default_factory=dict)
    witnesses: list[Witness] = field(default_factory=list)
    inconclusive: bool = False
    note: str = ""
    wall_time: float = 0.0

    @property
    def status(self) -> str:
        if self.witnesses:
            return "fail"
        return "inconclusive" if self.inconclusive else "pass"

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def __bool__(self):
        return self.passed

    def fail(self, location: str, expected, actual) -> None:
        self.witnesses.append(Witness(location, str(expected), str(actual)))

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "suite": self.suite,
            "name": self.name,
            "params": self.params,
            "status": self.status,
            "witnesses": [w.as_list() for w in self.witnesses],
        }
        if self.note:
            d["note"] = self.note
        if timing:
            d["wall_time"] = round(self.wall_time, 3)
        return d

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, default=str)

    def summary(self) -> str:
        extra = f" ({len(self.witnesses)} witnesses)" if self.witnesses else ""
        return f"[{self.status}] {self.suite}/{self.name} {self.params}{extra}"


@contextmanager
def timed(report: VerificationReport):
    t0 = time.perf_counter()
    try:
        yield report
    finally:
        report.wall_time = time.perf_counter() - t0
