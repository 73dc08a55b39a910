"""
Flowthings domain model.

This package provides the stage kinds, model elements, guard expressions,
the construction-time builder and the stage adjacency view.
"""

from .stages import StageKind, is_legal_flow, INTRA_MACHINE_ARCS, CROSS_MACHINE_ARCS, TRIGGER_TARGETS
from .guards import AttributeEquals, ClockBefore, And, Or, Not, Guard, eval_guard, format_guard
from .elements import (
    Attribute,
    ThingKind,
    Sphere,
    Machine,
    Endpoint,
    JunctionRef,
    FlowArc,
    TriggerArc,
    Junction,
    Model,
)
from .builder import ModelBuilder
from .graph import GraphEdge, stage_graph, edge_count

__all__ = [
    "StageKind",
    "is_legal_flow",
    "INTRA_MACHINE_ARCS",
    "CROSS_MACHINE_ARCS",
    "TRIGGER_TARGETS",
    "AttributeEquals",
    "ClockBefore",
    "And",
    "Or",
    "Not",
    "Guard",
    "eval_guard",
    "format_guard",
    "Attribute",
    "ThingKind",
    "Sphere",
    "Machine",
    "Endpoint",
    "JunctionRef",
    "FlowArc",
    "TriggerArc",
    "Junction",
    "Model",
    "ModelBuilder",
    "GraphEdge",
    "stage_graph",
    "edge_count",
]
