"""
File handling utilities for the flowkit toolchain.

This module provides file operations for model sources, scenarios, traces
and diagrams with proper error handling.
"""

import os
import tempfile
from pathlib import Path
from typing import Optional, Union

from core.constants import ENCODING
from core.exceptions import FileHandlingError


class FileHandler:
    """
    File handling with consistent error reporting.

    Every failure surfaces as FileHandlingError so the CLI can map it to
    its I/O exit code.
    """

    def __init__(self, encoding: str = ENCODING):
        """
        Initialize file handler.

        Args:
            encoding: Text encoding for read_text/write_text
        """
        self.encoding = encoding

    def read_bytes(self, file_path: Union[str, Path]) -> bytes:
        """
        Read a file as raw bytes.

        Args:
            file_path: File to read

        Returns:
            bytes: File contents
        """
        path = Path(file_path)
        if not path.is_file():
            raise FileHandlingError(f"File not found: {file_path}", file_path=str(file_path))

        try:
            return path.read_bytes()
        except OSError as e:
            raise FileHandlingError(f"Failed to read file: {file_path}", file_path=str(file_path)) from e

    def read_text(self, file_path: Union[str, Path]) -> str:
        """
        Read a text file.

        Args:
            file_path: File to read

        Returns:
            str: Decoded contents
        """
        data = self.read_bytes(file_path)
        try:
            return data.decode(self.encoding)
        except UnicodeDecodeError as e:
            raise FileHandlingError(
                f"File is not valid {self.encoding}: {file_path}", file_path=str(file_path)
            ) from e

    def write_text(self, file_path: Union[str, Path], content: str) -> str:
        """
        Write text atomically, creating parent directories.

        The content goes to a temporary file in the target directory first
        and replaces the destination in one step.

        Args:
            file_path: Destination path
            content: Text to write

        Returns:
            str: Absolute path written
        """
        path = Path(file_path).resolve()
        self.ensure_directory(path.parent)

        fd: Optional[int] = None
        temp_path: Optional[str] = None
        try:
            fd, temp_path = tempfile.mkstemp(prefix=".flowkit_", dir=str(path.parent))
            with os.fdopen(fd, "w", encoding=self.encoding, newline="\n") as handle:
                fd = None
                handle.write(content)
            os.replace(temp_path, path)
            temp_path = None
        except OSError as e:
            raise FileHandlingError(f"Failed to write file: {file_path}", file_path=str(file_path)) from e
        finally:
            if fd is not None:
                os.close(fd)
            if temp_path is not None and os.path.exists(temp_path):
                os.remove(temp_path)

        return str(path)

    def ensure_directory(self, directory: Union[str, Path]) -> str:
        """
        Ensure directory exists, creating it if necessary.

        Args:
            directory: Directory path to ensure

        Returns:
            str: Absolute path to the directory
        """
        try:
            dir_path = Path(directory).resolve()
            dir_path.mkdir(parents=True, exist_ok=True)
            return str(dir_path)
        except OSError as e:
            raise FileHandlingError(
                f"Failed to create directory: {directory}",
                file_path=str(directory)
            ) from e
