"""
Canonical text form of a model.

Output is byte-deterministic. Top-level declarations keep their
declaration order, except that a thing moves up to the first sphere block
holding a machine of its kind. Nested ones are indented by two spaces, one
declaration per line, with a blank line wherever the kind of declaration
changes.
"""

from typing import Dict, List, Set, Tuple, Union

from core.constants import INDENT
from model.elements import Attribute, FlowArc, Junction, Machine, Model, Sphere, ThingKind, TriggerArc
from model.guards import format_guard

_Item = Union[ThingKind, Sphere, Machine, Junction, FlowArc, TriggerArc]


def _attribute(attr: Attribute) -> str:
    domain = "int" if attr.is_integer else "{" + ", ".join(attr.symbols) + "}"
    text = f"{attr.name}: {domain}"
    if attr.default != attr.implicit_default:
        text += f" = {attr.default}"
    return text


def _thing(thing: ThingKind, depth: int) -> List[str]:
    pad = INDENT * depth
    if not thing.attributes:
        return [f"{pad}thing {thing.name}"]
    lines = [f"{pad}thing {thing.name} {{"]
    lines.extend(f"{pad}{INDENT}{_attribute(attr)}" for attr in thing.attributes)
    lines.append(f"{pad}}}")
    return lines


def _machine(machine: Machine, depth: int) -> List[str]:
    stages = ", ".join(str(stage) for stage in machine.stages)
    body = f"{{ {stages} }}" if stages else "{}"
    return [f"{INDENT * depth}machine {machine.name} of {machine.handles} {{ stages {body} }}"]


def _contents(model: Model, path: Tuple[str, ...]) -> List[Union[Sphere, Machine]]:
    items: List[Union[Sphere, Machine]] = [*model.child_spheres(path), *model.machines_in(path)]
    return sorted(items, key=lambda item: item.index)


def _sphere(model: Model, sphere: Sphere, depth: int) -> List[str]:
    pad = INDENT * depth
    contents = _contents(model, sphere.path)
    if not contents:
        return [f"{pad}sphere {sphere.name} {{}}"]
    lines = [f"{pad}sphere {sphere.name} {{"]
    for item in contents:
        if isinstance(item, Machine):
            lines.extend(_machine(item, depth + 1))
        else:
            lines.extend(_sphere(model, item, depth + 1))
    lines.append(f"{pad}}}")
    return lines


def _kinds_within(model: Model, item: Union[Sphere, Machine]) -> Set[str]:
    if isinstance(item, Machine):
        return {item.handles}
    depth = len(item.path)
    return {machine.handles for machine in model.machines if machine.path[:depth] == item.path}


def _position(model: Model, structure: List[Union[Sphere, Machine]]) -> Dict[str, int]:
    """Output position of each thing: never after a block that uses it."""
    positions = {thing.name: thing.index for thing in model.things}
    for item in structure:
        for kind in _kinds_within(model, item):
            if kind in positions:
                positions[kind] = min(positions[kind], item.index)
    return positions


def _trigger(arc: TriggerArc) -> str:
    text = f"trigger {arc.source} => {arc.target}"
    if arc.guard is not None:
        text += f" when {format_guard(arc.guard)}"
    return text


def _group(item: _Item) -> str:
    if isinstance(item, (Sphere, Machine)):
        return "structure"
    if isinstance(item, (FlowArc, TriggerArc)):
        return "arc"
    return type(item).__name__


def serialize(model: Model) -> str:
    """
    Render a model in canonical .fm syntax.

    Junction output arcs are written through their junction declaration.
    An empty model serializes to the empty string.

    Args:
        model: Model to render

    Returns:
        str: Canonical source text ending in a newline, or "" for an empty model
    """
    structure = _contents(model, ())
    positions = _position(model, structure)
    items: List[_Item] = [
        *model.things,
        *structure,
        *model.junctions,
        *model.flows,
        *(arc for arc in model.triggers if not arc.is_junction_output),
    ]
    items.sort(
        key=lambda item: (positions[item.name], 0, item.index) if isinstance(item, ThingKind) else (item.index, 1, 0)
    )

    lines: List[str] = []
    previous = None
    for item in items:
        group = _group(item)
        if previous is not None and group != previous:
            lines.append("")
        previous = group

        if isinstance(item, ThingKind):
            lines.extend(_thing(item, 0))
        elif isinstance(item, Sphere):
            lines.extend(_sphere(model, item, 0))
        elif isinstance(item, Machine):
            lines.extend(_machine(item, 0))
        elif isinstance(item, Junction):
            target = model.arc(item.output).target
            lines.append(f"junction {item.name} => {target}")
        elif isinstance(item, FlowArc):
            lines.append(f"flow {item.source} -> {item.target}")
        else:
            lines.append(_trigger(item))

    return "\n".join(lines) + "\n" if lines else ""
