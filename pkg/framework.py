"""
Main flowkit interface.

This module offers one object that ties the toolchain together: read a .fm
file, check it, simulate it against a scenario, extract its events and draw
it. The command line is a thin layer over this class.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Union

from analysis.diagnostics import Diagnostic
from analysis.validator import validate
from core.config import FlowkitConfig, get_config
from core.constants import MODEL_EXTENSION, SCENARIO_EXTENSION, TRACE_EXTENSION
from core.exceptions import ValidationError
from dsl.diagnostics import ParseDiagnostic
from dsl.parser import ParseResult, parse
from dsl.serializer import serialize
from model.elements import Model
from render.dot import RenderOptions, to_dot
from simulation.engine import run
from simulation.events import Process, extract_events
from simulation.scenario import Scenario, load_scenario
from simulation.state import EventTrace
from simulation.trace_io import read_trace
from utils.file_handler import FileHandler
from utils.validators import validate_file_format

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


@dataclass
class CheckReport:
    """Parse and validation findings for one model file."""

    parse: ParseResult
    diagnostics: List[Diagnostic] = field(default_factory=list)

    @property
    def model(self) -> Optional[Model]:
        return self.parse.model

    @property
    def findings(self) -> List[Union[ParseDiagnostic, Diagnostic]]:
        return [*self.parse.diagnostics, *self.diagnostics]

    @property
    def error_count(self) -> int:
        return sum(1 for finding in self.findings if finding.is_error)

    @property
    def warning_count(self) -> int:
        return len(self.findings) - self.error_count

    @property
    def ok(self) -> bool:
        return self.error_count == 0


@dataclass
class SimulationResult:
    model: Model
    scenario: Scenario
    trace: EventTrace
    process: Process


class FlowkitFramework:
    """
    High-level interface to the flowkit toolchain.

    Example:
        ```python
        framework = FlowkitFramework()
        report = framework.check("corpus/callcenter.fm")
        result = framework.simulate("corpus/callcenter.fm", "corpus/scenarios/callcenter/accept.json")
        ```
    """

    def __init__(self, config: Optional[FlowkitConfig] = None, file_handler: Optional[FileHandler] = None):
        self.config = config or get_config()
        self.file_handler = file_handler or FileHandler()

    def load(self, model_path: PathLike) -> ParseResult:
        """
        Read and parse a model file.

        Raises:
            FileHandlingError: If the file cannot be read
        """
        validate_file_format(model_path, [MODEL_EXTENSION])
        source = self.file_handler.read_bytes(model_path)
        return parse(source, source_name=str(model_path))

    def check(self, model_path: PathLike) -> CheckReport:
        """
        Parse a model file and, when it parses, validate the model.

        Returns:
            CheckReport: Parse diagnostics or validation diagnostics
        """
        result = self.load(model_path)
        if not result.ok:
            return CheckReport(result)
        return CheckReport(result, validate(result.model))

    def require_model(self, model_path: PathLike) -> Model:
        """
        Parse a model file that must be free of parse errors.

        Raises:
            ValidationError: If parsing reports errors
        """
        result = self.load(model_path)
        if not result.ok:
            first = result.errors[0]
            raise ValidationError(f"Model does not parse: {first}", field="model", value=str(model_path))
        return result.model

    def simulate(
        self, model_path: PathLike, scenario_path: PathLike, max_ticks: Optional[int] = None
    ) -> SimulationResult:
        """
        Run a model against a scenario file and extract the events of the run.

        Args:
            model_path: .fm file
            scenario_path: JSON scenario file
            max_ticks: Horizon override

        Returns:
            SimulationResult: Trace and derived process
        """
        validate_file_format(scenario_path, [SCENARIO_EXTENSION])
        model = self.require_model(model_path)
        scenario = load_scenario(scenario_path, self.file_handler)
        trace = run(model, scenario, max_ticks)
        logger.info(f"Simulated {model_path} with {scenario_path}: {len(trace)} records")
        return SimulationResult(model, scenario, trace, extract_events(trace, model))

    def render(
        self,
        model_path: PathLike,
        options: Optional[RenderOptions] = None,
        trace_path: Optional[PathLike] = None,
    ) -> str:
        """Draw a model, optionally marking a tick of a recorded trace."""
        model = self.require_model(model_path)
        trace = None
        if trace_path is not None:
            validate_file_format(trace_path, [TRACE_EXTENSION])
            trace = read_trace(trace_path, self.file_handler)
        return to_dot(model, options, trace)

    def format(self, model_path: PathLike) -> str:
        """Canonical text of a model file."""
        return serialize(self.require_model(model_path))

    def get_system_info(self) -> dict:
        return {"config": self.config.to_dict(), "encoding": self.file_handler.encoding}

