"""
Input validation utilities for the flowkit toolchain.

This module provides validation functions for identifiers, dotted paths
and file names used throughout the toolchain.
"""

import re
from pathlib import Path
from typing import Iterable, List, Union

from core.constants import IDENTIFIER_PATTERN, RESERVED_WORDS
from core.exceptions import ValidationError

_IDENTIFIER_RE = re.compile(rf"^{IDENTIFIER_PATTERN}$")


class InputValidator:
    """Main validator class for input validation."""

    @staticmethod
    def validate_identifier(name: str, field: str = "identifier") -> bool:
        """
        Validate a model identifier.

        Args:
            name: The identifier to validate
            field: Which element the identifier names, for error messages

        Returns:
            bool: True if valid

        Raises:
            ValidationError: If the identifier is invalid
        """
        if not isinstance(name, str):
            raise ValidationError(f"{field} must be a string", field=field, value=repr(name))

        if not name:
            raise ValidationError(f"{field} cannot be empty", field=field)

        if not _IDENTIFIER_RE.match(name):
            raise ValidationError(
                f"{field} '{name}' must start with a letter and use letters, digits, '_' or '-'",
                field=field,
                value=name,
            )

        if name in RESERVED_WORDS:
            raise ValidationError(f"{field} '{name}' is a reserved word", field=field, value=name)

        return True


def split_path(text: str) -> List[str]:
    """
    Split a dotted path into its segments.

    Args:
        text: Dotted path such as "Recruiter.Offer.Create"

    Returns:
        List[str]: Segments in order
    """
    if not text:
        return []
    return text.split(".")


def join_path(segments: Iterable[str]) -> str:
    """Join path segments with dots."""
    return ".".join(segments)


def validate_file_format(file_path: Union[str, Path], allowed_extensions: List[str]) -> bool:
    """
    Validate file format against allowed extensions.

    Args:
        file_path: Path to file
        allowed_extensions: List of allowed extensions (e.g., ['.fm'])

    Returns:
        bool: True if valid

    Raises:
        ValidationError: If file format is invalid
    """
    path = Path(file_path)

    if path.suffix.lower() not in [ext.lower() for ext in allowed_extensions]:
        raise ValidationError(f"File format not allowed. Allowed: {', '.join(allowed_extensions)}")

    return True
