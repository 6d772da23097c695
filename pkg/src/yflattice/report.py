from __future__ import annotations

from dataclasses import dataclass, field

MAX_LISTED = 20


@dataclass
class Report:
    """Outcome of a verification sweep: counts plus the first few counterexamples."""

    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    failure_count: int = 0
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def check(self, ok: bool, message: str = "") -> bool:
        self.checked += 1
        if not ok:
            self.failure_count += 1
            if len(self.failures) < MAX_LISTED:
                self.failures.append(message)
        return ok

    def merge(self, other: "Report") -> "Report":
        self.checked += other.checked
        self.failure_count += other.failure_count
        room = MAX_LISTED - len(self.failures)
        self.failures.extend(f"{other.name}: {m}" for m in other.failures[:max(room, 0)])
        return self

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: {self.checked} checks, {self.failure_count} failures"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failure_count": self.failure_count,
            "failures": list(self.failures),
            "notes": {k: str(v) for k, v in self.notes.items()},
        }
