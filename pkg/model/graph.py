"""
Adjacency view of a model's stages.
"""

from dataclasses import dataclass
from typing import Dict, List

from core.constants import DotStyle
from model.elements import FlowArc, Model, Node, JunctionRef


@dataclass(frozen=True)
class GraphEdge:
    """One outgoing arc in the stage graph; ``style`` is "solid" for flows, "dashed" for triggers."""

    target: Node
    arc_id: str
    style: str

    @property
    def is_flow(self) -> bool:
        return self.style == DotStyle.FLOW_EDGE


def stage_graph(model: Model) -> Dict[Node, List[GraphEdge]]:
    """
    Build the adjacency map over every stage and junction.

    Every stage endpoint and junction is a key, even without outgoing arcs;
    each arc appears exactly once, under its source, in declaration order.

    Args:
        model: Model to index

    Returns:
        Dict[Node, List[GraphEdge]]: Outgoing edges per node
    """
    graph: Dict[Node, List[GraphEdge]] = {endpoint: [] for endpoint in model.endpoints()}
    for junction in model.junctions:
        graph[JunctionRef(junction.name)] = []

    for arc in model.arcs:
        style = DotStyle.FLOW_EDGE if isinstance(arc, FlowArc) else DotStyle.TRIGGER_EDGE
        graph.setdefault(arc.source, []).append(GraphEdge(arc.target, arc.id, style))

    return graph


def edge_count(graph: Dict[Node, List[GraphEdge]]) -> int:
    return sum(len(edges) for edges in graph.values())
