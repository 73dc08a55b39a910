"""
Stage reachability over solid flow arcs.
"""

import logging
from dataclasses import dataclass
from typing import FrozenSet, Set

import networkx as nx

from core.exceptions import ValidationError
from model.elements import Endpoint, Model
from model.stages import StageKind

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReachabilitySet:
    """Stages reachable from an origin; the origin is always included."""

    origin: Endpoint
    reached: FrozenSet[Endpoint]

    def __contains__(self, endpoint: Endpoint) -> bool:
        return endpoint in self.reached

    def __len__(self) -> int:
        return len(self.reached)


def flow_graph(model: Model) -> nx.DiGraph:
    """
    Directed graph of stages joined by flow arcs.

    Every stage is a node. Arcs whose endpoints do not resolve are left out.
    """
    graph = nx.DiGraph()
    graph.add_nodes_from(model.endpoints())
    for arc in model.flows:
        if model.resolves(arc.source) and model.resolves(arc.target):
            graph.add_edge(arc.source, arc.target, arc=arc.id)
    return graph


def reachable_stages(model: Model, origin: Endpoint) -> ReachabilitySet:
    """
    Transitive closure over flow arcs from one stage.

    Args:
        model: Model to analyse
        origin: Stage to start from

    Returns:
        ReachabilitySet: The origin and every stage a flow path leads to

    Raises:
        ValidationError: If the origin does not name a stage of the model
    """
    if not model.resolves(origin):
        raise ValidationError(f"Origin '{origin}' does not resolve", field="origin", value=str(origin))

    graph = flow_graph(model)
    return ReachabilitySet(origin, frozenset(nx.descendants(graph, origin) | {origin}))


def flow_origins(model: Model) -> Set[Endpoint]:
    """
    Stages where things enter the flow graph.

    These are Create stages, Storage stages and boundary Transfers (a
    Transfer with an incoming cross-machine flow).
    """
    origins = {
        endpoint
        for endpoint in model.endpoints()
        if endpoint.stage in (StageKind.CREATE, StageKind.STORAGE)
    }
    for arc in model.flows:
        if arc.crosses_machines and arc.target.stage is StageKind.TRANSFER and model.resolves(arc.target):
            origins.add(arc.target)
    return origins


def dead_stages(model: Model) -> Set[Endpoint]:
    """
    Non-Storage stages no flow origin can reach.

    Args:
        model: Model to analyse

    Returns:
        Set[Endpoint]: Stages unreachable from every Create, Storage and boundary Transfer
    """
    graph = flow_graph(model)
    reached: Set[Endpoint] = set()
    for origin in flow_origins(model):
        if origin not in reached:
            reached.add(origin)
            reached |= nx.descendants(graph, origin)

    dead = {
        endpoint
        for endpoint in model.endpoints()
        if endpoint.stage is not StageKind.STORAGE and endpoint not in reached
    }
    logger.debug(f"{len(dead)} dead stages")
    return dead
