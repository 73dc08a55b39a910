"""
Domain types of a flowthings model.

All types are frozen dataclasses; a finished Model is immutable and safe to
share between threads. Declaration indices are carried on every element but
excluded from equality, so two models compare equal when they declare the
same elements in the same relative order.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterator, List, Optional, Tuple, Union

from model.guards import Guard, Value
from model.stages import StageKind
from utils.validators import join_path, split_path

SpherePath = Tuple[str, ...]


@dataclass(frozen=True)
class Attribute:
    """
    One attribute of a thing kind.

    ``symbols`` lists the enumeration domain; None means an integer domain.
    """

    name: str
    symbols: Optional[Tuple[str, ...]] = None
    default: Value = 0

    @property
    def is_integer(self) -> bool:
        return self.symbols is None

    @property
    def implicit_default(self) -> Value:
        """Default used when a declaration names none."""
        if self.symbols:
            return self.symbols[0]
        return 0

    def accepts(self, value: Value) -> bool:
        """Whether value lies in this attribute's domain."""
        if self.is_integer:
            return isinstance(value, int) and not isinstance(value, bool)
        return isinstance(value, str) and value in self.symbols


@dataclass(frozen=True)
class ThingKind:
    """A kind of flowthing: what can be created, released, transferred, processed and received."""

    name: str
    attributes: Tuple[Attribute, ...] = ()
    index: int = field(default=0, compare=False)

    def attribute(self, name: str) -> Optional[Attribute]:
        for attr in self.attributes:
            if attr.name == name:
                return attr
        return None

    def defaults(self) -> Dict[str, Value]:
        return {attr.name: attr.default for attr in self.attributes}


@dataclass(frozen=True)
class Sphere:
    """
    A sphere in the model's sphere tree.

    ``path`` is the sphere's position from the root (the root's path is
    empty); ``parent`` is the path of the enclosing sphere.
    """

    path: SpherePath
    parent: Optional[SpherePath] = None
    children: Tuple[str, ...] = ()
    machines: Tuple[str, ...] = ()
    index: int = field(default=0, compare=False)

    @property
    def name(self) -> str:
        return self.path[-1] if self.path else ""

    @property
    def is_root(self) -> bool:
        return not self.path

    def __str__(self) -> str:
        return join_path(self.path) or "<root>"


@dataclass(frozen=True)
class Machine:
    """A leaf subsphere holding the stages one kind of thing flows through."""

    owner: SpherePath
    name: str
    stages: Tuple[StageKind, ...]
    handles: str
    index: int = field(default=0, compare=False)

    @property
    def path(self) -> SpherePath:
        return self.owner + (self.name,)

    @property
    def id(self) -> str:
        return join_path(self.path)

    def has_stage(self, stage: StageKind) -> bool:
        return stage in self.stages

    def endpoint(self, stage: StageKind) -> "Endpoint":
        return Endpoint(self.owner, self.name, stage)

    def endpoints(self) -> Tuple["Endpoint", ...]:
        return tuple(self.endpoint(stage) for stage in self.stages)

    def __str__(self) -> str:
        return self.id


@dataclass(frozen=True)
class Endpoint:
    """A stage of a machine, addressed by sphere path, machine name and stage kind."""

    sphere_path: SpherePath
    machine: str
    stage: StageKind

    @property
    def machine_path(self) -> SpherePath:
        return self.sphere_path + (self.machine,)

    @property
    def machine_id(self) -> str:
        return join_path(self.machine_path)

    @classmethod
    def parse(cls, text: str) -> "Endpoint":
        """
        Parse a dotted endpoint such as ``Recruiter.Offer.Create``.

        Raises:
            ValueError: If the text has fewer than two segments or an unknown stage
        """
        segments = split_path(text)
        if len(segments) < 2:
            raise ValueError(f"Endpoint needs at least a machine and a stage: '{text}'")
        try:
            stage = StageKind.from_name(segments[-1])
        except KeyError:
            raise ValueError(f"Unknown stage kind '{segments[-1]}' in '{text}'") from None
        return cls(tuple(segments[:-2]), segments[-2], stage)

    def __str__(self) -> str:
        return join_path(self.machine_path + (self.stage.value,))


@dataclass(frozen=True)
class JunctionRef:
    """Reference to a junction used as a trigger source or target."""

    name: str

    def __str__(self) -> str:
        return f"junction {self.name}"


Node = Union[Endpoint, JunctionRef]


@dataclass(frozen=True)
class FlowArc:
    """A solid arrow carrying things between two stages."""

    id: str
    source: Endpoint
    target: Endpoint
    index: int = field(default=0, compare=False)

    @property
    def crosses_machines(self) -> bool:
        return self.source.machine_path != self.target.machine_path


@dataclass(frozen=True)
class TriggerArc:
    """
    A dashed arrow that fires creation or release elsewhere without carrying a thing.

    The source is a stage, or a junction for the junction's output arc. The
    target is a Create/Release stage or a junction the trigger latches into.
    """

    id: str
    source: Node
    target: Node
    guard: Optional[Guard] = None
    index: int = field(default=0, compare=False)

    @property
    def is_junction_output(self) -> bool:
        return isinstance(self.source, JunctionRef)


@dataclass(frozen=True)
class Junction:
    """An AND-synchronizer that fires its output once every input has latched."""

    name: str
    inputs: Tuple[str, ...]
    output: str
    index: int = field(default=0, compare=False)


Arc = Union[FlowArc, TriggerArc]


@dataclass(frozen=True)
class Model:
    """
    An immutable flowthings model.

    Spheres and machines are stored in sphere-tree pre-order, everything
    else in declaration order. Lookups are built lazily and cached on the
    instance.
    """

    spheres: Tuple[Sphere, ...] = (Sphere(()),)
    machines: Tuple[Machine, ...] = ()
    things: Tuple[ThingKind, ...] = ()
    flows: Tuple[FlowArc, ...] = ()
    triggers: Tuple[TriggerArc, ...] = ()
    junctions: Tuple[Junction, ...] = ()

    @cached_property
    def _spheres_by_path(self) -> Dict[SpherePath, Sphere]:
        return {sphere.path: sphere for sphere in self.spheres}

    @cached_property
    def _machines_by_path(self) -> Dict[SpherePath, Machine]:
        return {machine.path: machine for machine in self.machines}

    @cached_property
    def _things_by_name(self) -> Dict[str, ThingKind]:
        return {thing.name: thing for thing in self.things}

    @cached_property
    def _junctions_by_name(self) -> Dict[str, Junction]:
        return {junction.name: junction for junction in self.junctions}

    @cached_property
    def _arcs_by_id(self) -> Dict[str, Arc]:
        return {arc.id: arc for arc in self.arcs}

    @property
    def root(self) -> Sphere:
        return self._spheres_by_path.get((), Sphere(()))

    @cached_property
    def arcs(self) -> Tuple[Arc, ...]:
        """Flow and trigger arcs merged in declaration order."""
        return tuple(sorted((*self.flows, *self.triggers), key=lambda arc: arc.index))

    def sphere(self, path: SpherePath) -> Optional[Sphere]:
        return self._spheres_by_path.get(tuple(path))

    def machine(self, path: Union[SpherePath, str]) -> Optional[Machine]:
        if isinstance(path, str):
            path = tuple(split_path(path))
        return self._machines_by_path.get(tuple(path))

    def thing(self, name: str) -> Optional[ThingKind]:
        return self._things_by_name.get(name)

    def junction(self, name: str) -> Optional[Junction]:
        return self._junctions_by_name.get(name)

    def arc(self, arc_id: str) -> Optional[Arc]:
        return self._arcs_by_id.get(arc_id)

    def resolves(self, endpoint: Endpoint) -> bool:
        """Whether the endpoint names an existing stage."""
        machine = self.machine(endpoint.machine_path)
        return machine is not None and machine.has_stage(endpoint.stage)

    def kind_of(self, endpoint: Endpoint) -> Optional[ThingKind]:
        """Thing kind flowing through the endpoint's machine."""
        machine = self.machine(endpoint.machine_path)
        if machine is None:
            return None
        return self.thing(machine.handles)

    def endpoints(self) -> Iterator[Endpoint]:
        """Every stage of every machine, machines in tree order."""
        for machine in self.machines:
            yield from machine.endpoints()

    def machines_in(self, sphere_path: SpherePath) -> List[Machine]:
        return [machine for machine in self.machines if machine.owner == tuple(sphere_path)]

    def child_spheres(self, sphere_path: SpherePath) -> List[Sphere]:
        return [sphere for sphere in self.spheres if sphere.parent == tuple(sphere_path) and sphere.path]

    def is_empty(self) -> bool:
        return not (self.machines or self.things or self.arcs or len(self.spheres) > 1)
