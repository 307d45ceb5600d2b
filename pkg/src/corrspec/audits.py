from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Audit:
    """One named check with what was observed and what was expected."""

    name: str
    passed: bool
    observed: str
    expected: str

    @classmethod
    def compare(cls, name: str, observed, expected) -> "Audit":
        return cls(name, observed == expected, str(observed), str(expected))

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}: observed={self.observed} expected={self.expected}"


def all_passed(audits) -> bool:
    return all(a.passed for a in audits)
