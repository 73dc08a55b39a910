"""
Deterministic token simulation, traces and event extraction.
"""

from .scenario import InitialToken, Scenario, load_scenario
from .state import Actions, EventTrace, SimState, Token, TokenStatus, TraceRecord
from .engine import init, step, run
from .events import Event, Process, extract_events
from .trace_io import trace_to_jsonl, trace_from_jsonl, write_trace, read_trace, write_events

__all__ = [
    "InitialToken",
    "Scenario",
    "load_scenario",
    "Actions",
    "EventTrace",
    "SimState",
    "Token",
    "TokenStatus",
    "TraceRecord",
    "init",
    "step",
    "run",
    "Event",
    "Process",
    "extract_events",
    "trace_to_jsonl",
    "trace_from_jsonl",
    "write_trace",
    "read_trace",
    "write_events",
]
