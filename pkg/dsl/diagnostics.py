"""
Positioned diagnostics reported by the .fm parser.
"""

from dataclasses import dataclass, asdict
from typing import Optional

from core.constants import ParseCodes, Severity
from core.exceptions import ConstructionFault


@dataclass(frozen=True)
class SourceSpan:
    """A 1-based location in a source file."""

    file: str
    line: int
    column: int
    length: int = 1

    def __post_init__(self):
        if self.line < 1 or self.column < 1 or self.length < 1:
            raise ValueError(f"Invalid span {self.line}:{self.column}+{self.length}")

    def covers_line(self, line: int) -> bool:
        return self.line == line

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


@dataclass(frozen=True)
class ParseDiagnostic:
    """One parse finding with a stable FM-P code."""

    severity: str
    code: str
    message: str
    span: SourceSpan

    @property
    def is_error(self) -> bool:
        return self.severity == Severity.ERROR

    def to_dict(self) -> dict:
        return asdict(self)

    def __str__(self) -> str:
        return f"{self.span}: {self.severity} {self.code}: {self.message}"


_FAULT_CODES = {
    ConstructionFault.UNRESOLVED: ParseCodes.UNRESOLVED,
    ConstructionFault.DUPLICATE: ParseCodes.DUPLICATE,
    ConstructionFault.ILLEGAL_ARC: ParseCodes.ILLEGAL_ARC,
    ConstructionFault.ILLEGAL_MACHINE: ParseCodes.ILLEGAL_MACHINE,
    ConstructionFault.INVALID_NAME: ParseCodes.LEXICAL,
}


def code_for_fault(fault: ConstructionFault) -> str:
    """Parse code reported for a builder rejection."""
    return _FAULT_CODES[fault]


def error(code: str, message: str, span: SourceSpan) -> ParseDiagnostic:
    return ParseDiagnostic(Severity.ERROR, code, message, span)


def span_at(file: str, text: str, line: Optional[int], column: Optional[int], length: int = 1) -> SourceSpan:
    """
    Clamp a lexer/parser position into a valid span.

    Positions lark reports at end of input may be missing or zero; those
    fall back to the last line of the text.
    """
    lines = text.split("\n") or [""]
    if not line or line < 1:
        line = len(lines)
        column = len(lines[-1]) + 1
    line = min(line, len(lines))
    column = max(column or 1, 1)
    return SourceSpan(file, line, column, max(length, 1))
