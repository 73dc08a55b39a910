"""
Graphviz DOT output for models and trace snapshots.

Spheres become nested clusters, machines boxed subclusters, stages nodes
labeled by their kind. Flow arcs are solid edges, trigger arcs dashed edges
labeled with their guard, and every edge ends with a ``// a<k>`` comment
naming the arc it renders.
"""

import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Set

from core.constants import INDENT, DotStyle
from core.exceptions import RenderError
from model.elements import Endpoint, FlowArc, JunctionRef, Machine, Model, Node, Sphere
from model.guards import format_guard
from model.stages import StageKind
from simulation.state import EventTrace
from utils.validators import join_path, split_path

logger = logging.getLogger(__name__)

RANKDIRS = ("LR", "TB")


@dataclass(frozen=True)
class RenderOptions:
    """
    Diagram options.

    Attributes:
        show_spheres: Draw sphere clusters; machines are drawn either way
        highlight_tick: Mark the stages active at this tick (needs a trace)
        rankdir: Layout direction, LR or TB
    """

    show_spheres: bool = True
    highlight_tick: Optional[int] = None
    rankdir: str = "LR"

    def __post_init__(self):
        if self.rankdir not in RANKDIRS:
            raise RenderError(f"rankdir must be one of {RANKDIRS}", context={"rankdir": self.rankdir})


def _gvquote(text: str) -> str:
    return '"{}"'.format(text.replace("\\", "\\\\").replace('"', r"\""))


def node_id(node: Node) -> str:
    if isinstance(node, JunctionRef):
        return _gvquote(f"junction:{node.name}")
    return _gvquote(str(node))


class _DotWriter:
    def __init__(self, model: Model, options: RenderOptions, occupied: Set[Endpoint]):
        self.model = model
        self.options = options
        self.occupied = occupied

    def lines(self) -> Iterator[str]:
        yield f"digraph {DotStyle.GRAPH_NAME} {{"
        yield f"{INDENT}rankdir={self.options.rankdir};"
        yield f'{INDENT}graph [fontname="{DotStyle.FONT}"];'
        yield f'{INDENT}node [fontname="{DotStyle.FONT}"];'
        yield f'{INDENT}edge [fontname="{DotStyle.FONT}"];'
        yield f"{INDENT}subgraph cluster_root {{"
        yield f'{INDENT * 2}label="";'
        yield from self._sphere_body(self.model.root, 2)
        yield f"{INDENT}}}"
        for junction in self.model.junctions:
            yield f"{INDENT}{node_id(JunctionRef(junction.name))} [{DotStyle.JUNCTION_ATTRS}];"
        for arc in self.model.arcs:
            yield INDENT + self._edge(arc)
        yield "}"

    def _sphere_body(self, sphere: Sphere, depth: int) -> Iterator[str]:
        for machine in self.model.machines_in(sphere.path):
            yield from self._machine(machine, depth)
        for child in self.model.child_spheres(sphere.path):
            if self.options.show_spheres:
                pad = INDENT * depth
                yield f"{pad}subgraph {_gvquote('cluster_sphere:' + join_path(child.path))} {{"
                yield f"{pad}{INDENT}label={_gvquote(child.name)};"
                yield f"{pad}{INDENT}style={DotStyle.SPHERE_STYLE};"
                yield from self._sphere_body(child, depth + 1)
                yield f"{pad}}}"
            else:
                yield from self._sphere_body(child, depth)

    def _machine(self, machine: Machine, depth: int) -> Iterator[str]:
        pad = INDENT * depth
        yield f"{pad}subgraph {_gvquote('cluster_machine:' + machine.id)} {{"
        yield f"{pad}{INDENT}label={_gvquote(machine.name)};"
        yield f"{pad}{INDENT}style={DotStyle.MACHINE_STYLE};"
        for endpoint in machine.endpoints():
            yield f"{pad}{INDENT}{node_id(endpoint)} [{self._stage_attrs(endpoint)}];"
        yield f"{pad}}}"

    def _stage_attrs(self, endpoint: Endpoint) -> str:
        shape = DotStyle.STORAGE_SHAPE if endpoint.stage is StageKind.STORAGE else DotStyle.STAGE_SHAPE
        attrs = [f"shape={shape}", f"label={_gvquote(str(endpoint.stage))}"]
        if endpoint in self.occupied:
            attrs.append(f"peripheries={DotStyle.OCCUPIED_PERIPHERIES}")
        return ", ".join(attrs)

    def _edge(self, arc) -> str:
        if isinstance(arc, FlowArc):
            attrs = [f"style={DotStyle.FLOW_EDGE}"]
        else:
            attrs = [f"style={DotStyle.TRIGGER_EDGE}"]
            if arc.guard is not None:
                attrs.append(f"label={_gvquote(format_guard(arc.guard))}")
        return f"{node_id(arc.source)} -> {node_id(arc.target)} [{', '.join(attrs)}]; // {arc.id}"


def _occupied_at(model: Model, trace: EventTrace, tick: int) -> Set[Endpoint]:
    if not 0 <= tick <= trace.final_tick:
        raise RenderError(
            f"Tick {tick} is outside the trace range 0..{trace.final_tick}",
            context={"tick": tick, "final_tick": trace.final_tick},
        )
    occupied: Set[Endpoint] = set()
    for record in trace.at_tick(tick):
        path = tuple(split_path(record.machine))
        endpoint = Endpoint(path[:-1], path[-1], StageKind.from_name(record.stage))
        if model.resolves(endpoint):
            occupied.add(endpoint)
    return occupied


def to_dot(model: Model, options: Optional[RenderOptions] = None, trace: Optional[EventTrace] = None) -> str:
    """
    Render a model as DOT text.

    Args:
        model: Model to draw
        options: Diagram options; defaults apply when omitted
        trace: Trace used with ``options.highlight_tick``

    Returns:
        str: DOT source, byte-identical for identical inputs

    Raises:
        RenderError: If a highlight tick is requested without a trace or outside it
    """
    options = options or RenderOptions()
    occupied: Set[Endpoint] = set()
    if options.highlight_tick is not None:
        if trace is None:
            raise RenderError("highlight_tick requires a trace")
        occupied = _occupied_at(model, trace, options.highlight_tick)

    lines: List[str] = list(_DotWriter(model, options, occupied).lines())
    logger.info(f"Rendered {len(model.machines)} machines and {len(model.arcs)} arcs")
    return "\n".join(lines) + "\n"


def to_trace_snapshot(
    model: Model, trace: EventTrace, tick: int, options: Optional[RenderOptions] = None
) -> str:
    """
    Render the model with the stages active at ``tick`` drawn with a double border.

    Raises:
        RenderError: If ``tick`` is outside the trace
    """
    base = options or RenderOptions()
    snapshot = RenderOptions(show_spheres=base.show_spheres, highlight_tick=tick, rankdir=base.rankdir)
    return to_dot(model, snapshot, trace)
