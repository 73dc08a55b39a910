"""
Whole-model validation and stage reachability analysis.
"""

from .diagnostics import Diagnostic, sort_diagnostics, count_by_severity
from .reachability import ReachabilitySet, reachable_stages, dead_stages, flow_graph, flow_origins
from .validator import ModelValidator, validate, has_errors

__all__ = [
    "Diagnostic",
    "sort_diagnostics",
    "count_by_severity",
    "ReachabilitySet",
    "reachable_stages",
    "dead_stages",
    "flow_graph",
    "flow_origins",
    "ModelValidator",
    "validate",
    "has_errors",
]
