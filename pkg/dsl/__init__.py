"""
Textual .fm language: parser with positioned diagnostics and canonical serializer.
"""

from .diagnostics import ParseDiagnostic, SourceSpan
from .parser import ParseResult, parse, parse_guard
from .serializer import serialize

__all__ = [
    "ParseDiagnostic",
    "SourceSpan",
    "ParseResult",
    "parse",
    "parse_guard",
    "serialize",
]
