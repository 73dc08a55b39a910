"""
Utilities module for the flowkit toolchain.

This module provides file handling and input validation helpers.
"""

from .file_handler import FileHandler
from .validators import (
    InputValidator,
    split_path,
    join_path,
    validate_file_format,
)

__all__ = [
    "FileHandler",
    "InputValidator",
    "split_path",
    "join_path",
    "validate_file_format",
]
