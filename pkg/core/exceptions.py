"""
Custom exceptions for the flowkit toolchain.

This module defines all custom exceptions used throughout the toolchain.
Diagnostics about a model (parse or validation findings) are values, not
exceptions; the classes below cover API misuse, bad inputs and I/O.
"""

from enum import Enum
from typing import Optional


class ConstructionFault(Enum):
    """Categories of model construction failures."""

    UNRESOLVED = "unresolved"
    DUPLICATE = "duplicate"
    ILLEGAL_ARC = "illegal_arc"
    ILLEGAL_MACHINE = "illegal_machine"
    INVALID_NAME = "invalid_name"


class FlowkitError(Exception):
    """
    Base exception class for all flowkit errors.

    Attributes:
        message (str): The error message
        error_code (str): Error code for categorization
        context (dict): Additional context information
    """

    def __init__(self, message: str, error_code: Optional[str] = None, context: Optional[dict] = None):
        """
        Initialize the toolchain error.

        Args:
            message (str): Human-readable error message
            error_code (str, optional): Machine-readable error code
            context (dict, optional): Additional context information
        """
        super().__init__(message)
        self.message = message
        self.error_code = error_code or "FLOWKIT_ERROR"
        self.context = context or {}

    def __str__(self) -> str:
        """Return a formatted error message."""
        if self.context:
            return f"[{self.error_code}] {self.message} | Context: {self.context}"
        return f"[{self.error_code}] {self.message}"


class ConfigurationError(FlowkitError):
    """Raised for invalid toolchain settings or environment values."""

    def __init__(self, message: str, context: Optional[dict] = None):
        super().__init__(message, error_code="CONFIG_ERROR", context=context)


class ModelConstructionError(FlowkitError):
    """
    Exception raised when a builder operation would break a model rule.

    The fault tells callers what kind of rule was hit (the DSL maps it to a
    parse code); ``rule_code`` carries the matching FM-E validation code when
    the rule also exists as a whole-model check.
    """

    def __init__(
        self,
        message: str,
        fault: ConstructionFault,
        rule_code: Optional[str] = None,
        subject: Optional[str] = None,
        context: Optional[dict] = None,
    ):
        context = context or {}
        if subject:
            context["subject"] = subject
        if rule_code:
            context["rule"] = rule_code

        super().__init__(message, error_code="MODEL_CONSTRUCTION_ERROR", context=context)
        self.fault = fault
        self.rule_code = rule_code
        self.subject = subject


class ScenarioError(FlowkitError):
    """
    Exception raised for invalid simulation scenarios.

    Covers malformed scenario files, references to unknown machines or thing
    kinds, tokens placed at stages their machine lacks and guards whose
    names the scenario cannot resolve.
    """

    def __init__(self, message: str, field: Optional[str] = None, context: Optional[dict] = None):
        context = context or {}
        if field:
            context["field"] = field

        super().__init__(message, error_code="SCENARIO_ERROR", context=context)


class GuardEvaluationError(FlowkitError):
    """Raised when a guard references a name with no value."""

    def __init__(self, message: str, name: Optional[str] = None, context: Optional[dict] = None):
        context = context or {}
        if name:
            context["name"] = name

        super().__init__(message, error_code="GUARD_EVALUATION_ERROR", context=context)


class SimulationError(FlowkitError):
    """
    Exception raised when a simulation cannot start or its inputs disagree.

    Examples are a model that still has validation errors, or a trace whose
    records name machines the model does not contain.
    """

    def __init__(self, message: str, context: Optional[dict] = None):
        super().__init__(message, error_code="SIMULATION_ERROR", context=context)


class RenderError(FlowkitError):
    """Raised for diagram requests that cannot be satisfied."""

    def __init__(self, message: str, context: Optional[dict] = None):
        super().__init__(message, error_code="RENDER_ERROR", context=context)


class FileHandlingError(FlowkitError):
    """
    Exception raised for file handling errors.

    This exception is raised when there are issues with file operations,
    such as missing model files, unreadable scenarios or permission problems.
    """

    def __init__(self, message: str, file_path: Optional[str] = None, context: Optional[dict] = None):
        context = context or {}
        if file_path:
            context["file_path"] = file_path

        super().__init__(message, error_code="FILE_HANDLING_ERROR", context=context)


class ValidationError(FlowkitError):
    """
    Exception raised for input validation errors.

    This exception is raised when input validation fails, such as invalid
    identifiers, unsupported file extensions or malformed values.
    """

    def __init__(
        self, message: str, field: Optional[str] = None, value: Optional[str] = None, context: Optional[dict] = None
    ):
        context = context or {}
        if field:
            context["field"] = field
        if value:
            context["value"] = str(value)

        super().__init__(message, error_code="VALIDATION_ERROR", context=context)


# Error context helpers
def create_error_context(**kwargs) -> dict:
    """
    Create an error context dictionary with common debugging information.

    Args:
        **kwargs: Additional context key-value pairs

    Returns:
        dict: Error context with timestamp and provided information
    """
    import time
    import traceback

    context = {"timestamp": time.time(), "traceback": traceback.format_exc(), **kwargs}

    return context


def handle_flowkit_error(error: Exception, operation: Optional[str] = None) -> FlowkitError:
    """
    Convert a generic exception to a FlowkitError with context.

    Args:
        error (Exception): The original exception
        operation (str, optional): Description of the operation that failed

    Returns:
        FlowkitError: Toolchain-specific error with context
    """
    if isinstance(error, FlowkitError):
        return error

    context = create_error_context(
        original_error=str(error), error_type=type(error).__name__, operation=operation
    )

    if isinstance(error, (FileNotFoundError, PermissionError, IOError)):
        return FileHandlingError(f"File operation failed: {str(error)}", context=context)

    if isinstance(error, (ValueError, TypeError)):
        return ValidationError(f"Validation failed: {str(error)}", context=context)

    return FlowkitError(f"Operation failed: {str(error)}", context=context)


__all__ = [
    "ConstructionFault",
    "FlowkitError",
    "ConfigurationError",
    "ModelConstructionError",
    "ScenarioError",
    "GuardEvaluationError",
    "SimulationError",
    "RenderError",
    "FileHandlingError",
    "ValidationError",
    "create_error_context",
    "handle_flowkit_error",
]
