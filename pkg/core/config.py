"""
Core configuration management for the flowkit toolchain.

This module handles environment variables and global toolchain settings.
"""

import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from core.exceptions import ConfigurationError

# Load environment variables from .env file if dotenv is available
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    # dotenv is optional - continue without it
    pass


_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass
class FlowkitConfig:
    """
    Central configuration class for the flowkit toolchain.

    Attributes:
        default_max_ticks (int): Simulation horizon when a scenario names none
        log_level (str): Level handed to logging.basicConfig by the entry point
        no_color (bool): Disable styled terminal output
        corpus_dir (str): Directory holding the bundled example models
    """

    default_max_ticks: int = 1000
    log_level: str = "WARNING"
    no_color: bool = False
    corpus_dir: Optional[str] = None

    def __post_init__(self):
        """Fill in directory defaults."""
        if self.corpus_dir is None:
            self.corpus_dir = str(Path(__file__).resolve().parent.parent / "corpus")
        self.log_level = self.log_level.upper()

    @classmethod
    def from_env(cls) -> "FlowkitConfig":
        """
        Create configuration from environment variables.

        Returns:
            FlowkitConfig: Configuration instance with values from environment
        """
        try:
            max_ticks = int(os.getenv("FLOWKIT_MAX_TICKS", "1000"))
        except ValueError as e:
            raise ConfigurationError(
                "FLOWKIT_MAX_TICKS must be an integer",
                context={"value": os.getenv("FLOWKIT_MAX_TICKS")},
            ) from e

        return cls(
            default_max_ticks=max_ticks,
            log_level=os.getenv("FLOWKIT_LOG_LEVEL", "WARNING"),
            no_color="NO_COLOR" in os.environ,
            corpus_dir=os.getenv("FLOWKIT_CORPUS_DIR") or None,
        )

    def validate(self) -> bool:
        """
        Validate the configuration settings.

        Returns:
            bool: True if configuration is valid

        Raises:
            ConfigurationError: If configuration is invalid
        """
        if self.default_max_ticks < 1:
            raise ConfigurationError(
                "default_max_ticks must be positive",
                context={"default_max_ticks": self.default_max_ticks},
            )

        if self.log_level not in _LOG_LEVELS:
            raise ConfigurationError(
                f"Unknown log level: {self.log_level}",
                context={"allowed": list(_LOG_LEVELS)},
            )

        return True

    @property
    def logging_level(self) -> int:
        """Numeric logging level for logging.basicConfig."""
        return getattr(logging, self.log_level, logging.WARNING)

    def to_dict(self) -> dict:
        """
        Convert configuration to dictionary.

        Returns:
            dict: Configuration as dictionary
        """
        return dict(self.__dict__)


# Global configuration instance (can be overridden)
_global_config: Optional[FlowkitConfig] = None


def get_config() -> FlowkitConfig:
    """
    Get the global toolchain configuration.

    Returns:
        FlowkitConfig: The global configuration instance
    """
    global _global_config
    if _global_config is None:
        _global_config = FlowkitConfig.from_env()
    return _global_config


def set_config(config: Optional[FlowkitConfig]) -> None:
    """
    Set the global toolchain configuration.

    Passing None drops the cached instance so the next get_config()
    re-reads the environment.

    Args:
        config (FlowkitConfig): New configuration to use globally
    """
    global _global_config
    if config is not None:
        config.validate()
    _global_config = config
