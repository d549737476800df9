"""Validation reports and the error taxonomy shared by every checker."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

MAX_WITNESSES = 3


class MalformedInput(ValueError):
    """Input could not be checked at all (bad shapes, out-of-range entries)."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class ResourceLimit(RuntimeError):
    """A size guard refused to run an exhaustive computation."""


class InvalidStructure(ValueError):
    """A precondition on the input structure failed.

    ``report`` carries the violations when the rejection came from a checker.
    """

    def __init__(self, message: str, report: "ValidationReport | None" = None,
                 axiom: str | None = None):
        super().__init__(message)
        self.report = report
        self.axiom = axiom if axiom is not None else (
            report.violations[0].axiom if report is not None and report.violations else None)


class SoundnessError(AssertionError):
    """A derived property failed although every primitive axiom held."""


@dataclass
class Violation:
    axiom: str
    law: str
    count: int = 0
    witnesses: list = field(default_factory=list)
    derived: bool = False

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"axiom": self.axiom, "law": self.law, "count": self.count,
                               "witnesses": [list(w) if isinstance(w, tuple) else w
                                             for w in self.witnesses]}
        if self.derived:
            out["derived_violation"] = True
        return out

    def describe(self) -> str:
        tag = " DERIVED-VIOLATION" if self.derived else ""
        wit = ", ".join(str(w) for w in self.witnesses)
        return f"{self.axiom}{tag}: {self.law} fails ({self.count}x; e.g. {wit})"


@dataclass
class ValidationReport:
    """Every violated axiom, not just the first.

    ``kind`` names what was checked (category, groupoid, hom, ...); ``info``
    holds by-products such as the computed base.
    """

    kind: str
    violations: list[Violation] = field(default_factory=list)
    info: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    @property
    def axioms(self) -> list[str]:
        return [v.axiom for v in self.violations]

    def add(self, axiom: str, law: str, witnesses, derived: bool = False) -> None:
        """Record ``axiom`` as violated if ``witnesses`` is nonempty."""
        witnesses = list(witnesses)
        if not witnesses:
            return
        shown = [tuple(int(x) for x in w) if isinstance(w, (tuple, list)) else
                 (int(w) if not isinstance(w, str) else w) for w in witnesses[:MAX_WITNESSES]]
        self.violations.append(Violation(axiom, law, len(witnesses), shown, derived))

    def extend(self, other: "ValidationReport") -> None:
        self.violations.extend(other.violations)

    def to_json(self) -> dict[str, Any]:
        return {"kind": self.kind, "valid": self.ok,
                "violations": [v.to_json() for v in self.violations],
                "info": self.info}

    def text_lines(self) -> list[str]:
        if self.ok:
            return [f"valid {self.kind}"]
        return [f"invalid {self.kind}"] + ["  " + v.describe() for v in self.violations]
