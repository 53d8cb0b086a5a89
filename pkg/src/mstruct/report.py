"""Small result containers shared by every checker."""
from __future__ import annotations

from dataclasses import dataclass, field


def witness_repr(obj):
    """Deterministic, JSON-friendly rendering of a witness."""
    if obj is None:
        return None
    return repr(obj)


@dataclass
class Outcome:
    """Pass/fail tally for one property; keeps the first failing witness."""

    passed: bool = True
    checked: int = 0
    witness: object = None
    note: str = ""

    def record(self, ok, witness=None):
        self.checked += 1
        if not ok and self.passed:
            self.passed = False
            self.witness = witness
        return ok

    def to_json(self):
        out = {"passed": self.passed, "checked": self.checked, "witness": witness_repr(self.witness)}
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class Report:
    """Named collection of outcomes plus free-form facts."""

    title: str
    outcomes: dict = field(default_factory=dict)
    facts: dict = field(default_factory=dict)

    def __getitem__(self, key) -> Outcome:
        if key not in self.outcomes:
            self.outcomes[key] = Outcome()
        return self.outcomes[key]

    @property
    def passed(self):
        return all(o.passed for o in self.outcomes.values())

    def failures(self):
        return {k: o for k, o in self.outcomes.items() if not o.passed}

    def to_json(self):
        return {"title": self.title, "passed": self.passed,
                "checks": {k: o.to_json() for k, o in sorted(self.outcomes.items())},
                "facts": self.facts}

    def to_text(self):
        lines = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for k, o in sorted(self.outcomes.items()):
            tail = "" if o.passed else f"  witness={witness_repr(o.witness)}"
            lines.append(f"  {k}: {'ok' if o.passed else 'FAIL'} ({o.checked} checked){tail}")
        for k, v in self.facts.items():
            lines.append(f"  {k}: {v}")
        return "\n".join(lines)
