"""
Core module initialization for the flowkit toolchain.

This module provides access to core configuration, constants, and exceptions.
"""

from .config import FlowkitConfig, get_config, set_config
from .constants import (
    MODEL_EXTENSION,
    RESERVED_WORDS,
    CLOCK_SYMBOL,
    EXIT_OK,
    EXIT_DIAGNOSTICS,
    EXIT_USAGE,
    ParseCodes,
    RuleCodes,
    DotStyle,
    Severity,
)
from .exceptions import (
    ConstructionFault,
    FlowkitError,
    ConfigurationError,
    ModelConstructionError,
    ScenarioError,
    GuardEvaluationError,
    SimulationError,
    RenderError,
    FileHandlingError,
    ValidationError,
)

__all__ = [
    # Configuration
    "FlowkitConfig",
    "get_config",
    "set_config",
    # Constants
    "MODEL_EXTENSION",
    "RESERVED_WORDS",
    "CLOCK_SYMBOL",
    "EXIT_OK",
    "EXIT_DIAGNOSTICS",
    "EXIT_USAGE",
    "ParseCodes",
    "RuleCodes",
    "DotStyle",
    "Severity",
    # Exceptions
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
]
