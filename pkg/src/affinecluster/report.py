"""Pass/fail reports shared by the symbolic checks."""

from __future__ import annotations

from dataclasses import dataclass, field

from .laurent import LaurentPoly


def _show(v):
    if isinstance(v, LaurentPoly):
        return str(v)
    return v


@dataclass
class CheckReport:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, n, lhs=None, rhs=None) -> bool:
        self.checked += 1
        if not ok:
            self.failures.append({"n": n, "lhs": _show(lhs), "rhs": _show(rhs)})
        return ok

    def merge(self, other: "CheckReport") -> "CheckReport":
        self.checked += other.checked
        self.failures.extend(other.failures)
        return self

    def to_dict(self) -> dict:
        out = {"check": self.name, "passed": self.passed, "checked": self.checked,
               "failures": self.failures}
        if self.info:
            out["info"] = {k: _show(v) for k, v in self.info.items()}
        return out
