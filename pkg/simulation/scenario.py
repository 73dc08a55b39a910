"""
Scenario files: external inputs to a simulation run.

A scenario is a JSON object with the keys ``initial_tokens``, ``bindings``,
``deadlines``, ``max_ticks`` and ``accept_policy``. Unknown keys are rejected.
"""

import logging
from pathlib import Path
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, PositiveInt, StrictInt, StrictStr
from pydantic import ValidationError as SchemaError

from core.exceptions import ScenarioError
from utils.file_handler import FileHandler

logger = logging.getLogger(__name__)

Scalar = Union[StrictInt, StrictStr]


class InitialToken(BaseModel):
    """A token placed before the first tick."""

    model_config = ConfigDict(extra="forbid")

    machine: str = Field(..., description="Dotted machine path, e.g. Shelf.Book")
    stage: str = Field(..., description="Stage name within the machine")
    kind: Optional[str] = Field(None, description="Thing kind; defaults to the machine's kind")
    attributes: Dict[str, Scalar] = Field(default_factory=dict, description="Explicit attribute values")


class Scenario(BaseModel):
    """
    External inputs to one simulation run.

    Attributes:
        initial_tokens: Tokens present at tick 0
        bindings: External choices, applied to every token whose kind has the named attribute
        deadlines: Named tick limits used by clock guards
        max_ticks: Horizon; falls back to the configured default when absent
        accept_policy: Guard text per machine path, applied at Accept stages
    """

    model_config = ConfigDict(extra="forbid")

    initial_tokens: List[InitialToken] = Field(default_factory=list)
    bindings: Dict[str, Scalar] = Field(default_factory=dict)
    deadlines: Dict[str, StrictInt] = Field(default_factory=dict)
    max_ticks: Optional[PositiveInt] = None
    accept_policy: Dict[str, str] = Field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: dict) -> "Scenario":
        """
        Validate a scenario mapping.

        Raises:
            ScenarioError: If the mapping does not match the scenario schema
        """
        try:
            return cls.model_validate(data)
        except SchemaError as e:
            raise ScenarioError(f"Invalid scenario: {_first_problem(e)}") from e

    @classmethod
    def from_json(cls, text: str) -> "Scenario":
        """
        Parse scenario JSON text.

        Raises:
            ScenarioError: If the text is not valid JSON or does not match the schema
        """
        try:
            return cls.model_validate_json(text)
        except SchemaError as e:
            raise ScenarioError(f"Invalid scenario: {_first_problem(e)}") from e


def _first_problem(error: SchemaError) -> str:
    problem = error.errors()[0]
    location = ".".join(str(part) for part in problem.get("loc", ())) or "<root>"
    return f"{location}: {problem.get('msg', 'invalid value')}"


def load_scenario(file_path: Union[str, Path], file_handler: Optional[FileHandler] = None) -> Scenario:
    """
    Read and validate a scenario file.

    Args:
        file_path: Path to the JSON scenario
        file_handler: Handler used for reading; a default one is created when omitted

    Returns:
        Scenario: The validated scenario

    Raises:
        FileHandlingError: If the file cannot be read
        ScenarioError: If its content is not a valid scenario
    """
    handler = file_handler or FileHandler()
    scenario = Scenario.from_json(handler.read_text(file_path))
    logger.info(f"Loaded scenario {file_path}: {len(scenario.initial_tokens)} initial tokens")
    return scenario
