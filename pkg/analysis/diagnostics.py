"""
Validation findings.
"""

from dataclasses import dataclass, field
from typing import Iterable, List

from core.constants import Severity


@dataclass(frozen=True)
class Diagnostic:
    """
    One validation finding.

    Attributes:
        severity: "error" or "warning"
        code: Stable FM-E/FM-W code
        message: Human-readable description
        subject: Id of the offending model element
        subject_index: Declaration index of the subject, used for ordering
    """

    severity: str
    code: str
    message: str
    subject: str
    subject_index: int = field(default=0, compare=False)

    @property
    def is_error(self) -> bool:
        return self.severity == Severity.ERROR

    @property
    def sort_key(self):
        return (Severity.RANK[self.severity], self.code, self.subject_index, self.subject)

    def to_dict(self) -> dict:
        return {"code": self.code, "severity": self.severity, "message": self.message, "subject": self.subject}

    def __str__(self) -> str:
        return f"{self.severity} {self.code} [{self.subject}]: {self.message}"


def error(code: str, message: str, subject: str, index: int) -> Diagnostic:
    return Diagnostic(Severity.ERROR, code, message, subject, index)


def warning(code: str, message: str, subject: str, index: int) -> Diagnostic:
    return Diagnostic(Severity.WARNING, code, message, subject, index)


def sort_diagnostics(diagnostics: Iterable[Diagnostic]) -> List[Diagnostic]:
    """Order by severity (errors first), code, then subject declaration index."""
    return sorted(diagnostics, key=lambda diag: diag.sort_key)


def count_by_severity(diagnostics: Iterable[Diagnostic]) -> dict:
    counts = {Severity.ERROR: 0, Severity.WARNING: 0}
    for diag in diagnostics:
        counts[diag.severity] += 1
    return counts
