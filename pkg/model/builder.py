"""
Incremental construction of flowthings models.

ModelBuilder enforces every construction-time rule: identifiers are valid,
names are unique, endpoints resolve, flow pairs are in the legal arc table
and triggers target Create/Release stages or declared junctions. A builder
is single-owner; ``build()`` freezes what was added into a Model.
"""

import logging
from typing import Dict, Iterable, List, Optional, Sequence, Union

from core.constants import RuleCodes
from core.exceptions import ConstructionFault, ModelConstructionError, ValidationError
from model.elements import (
    Attribute,
    Endpoint,
    FlowArc,
    Junction,
    JunctionRef,
    Machine,
    Model,
    Sphere,
    SpherePath,
    ThingKind,
    TriggerArc,
)
from model.guards import Guard, referenced_attributes
from model.stages import TRIGGER_TARGETS, StageKind, has_receive_conflict, is_legal_flow
from utils.validators import InputValidator, join_path

logger = logging.getLogger(__name__)


def _fault(
    message: str,
    fault: ConstructionFault,
    subject: Optional[str] = None,
    rule_code: Optional[str] = None,
) -> ModelConstructionError:
    return ModelConstructionError(message, fault, rule_code=rule_code, subject=subject)


class ModelBuilder:
    """
    Mutable builder for an immutable Model.

    Example:
        ```python
        builder = ModelBuilder()
        builder.add_thing("book")
        builder.add_sphere(["Shelf"])
        builder.add_machine(["Shelf"], "Book", "book", ["Storage", "Release"])
        builder.add_flow_arc("Shelf.Book.Storage", "Shelf.Book.Release")
        model = builder.build()
        ```
    """

    def __init__(self):
        self._next_index = 0
        self._arc_count = 0
        self._things: Dict[str, ThingKind] = {}
        self._spheres: Dict[SpherePath, dict] = {(): {"parent": None, "children": [], "machines": [], "index": -1}}
        self._machines: Dict[SpherePath, Machine] = {}
        self._flows: List[FlowArc] = []
        self._triggers: List[TriggerArc] = []
        self._junctions: Dict[str, dict] = {}

    def _take_index(self) -> int:
        index = self._next_index
        self._next_index += 1
        return index

    def _take_arc_id(self) -> str:
        self._arc_count += 1
        return f"a{self._arc_count}"

    @staticmethod
    def _check_name(name: str, field: str) -> None:
        try:
            InputValidator.validate_identifier(name, field=field)
        except ValidationError as e:
            raise _fault(e.message, ConstructionFault.INVALID_NAME, subject=str(name)) from e

    # Declarations

    def add_thing(self, name: str, attributes: Iterable[Attribute] = ()) -> str:
        """
        Declare a thing kind.

        Args:
            name: Kind name, unique within the model
            attributes: Attribute declarations, names unique within the kind

        Returns:
            str: The kind name

        Raises:
            ModelConstructionError: On invalid or duplicate names, or defaults outside their domain
        """
        self._check_name(name, "thing")
        if name in self._things:
            raise _fault(f"Thing kind '{name}' is already declared", ConstructionFault.DUPLICATE, subject=name)

        seen = set()
        attrs = tuple(attributes)
        for attr in attrs:
            self._check_name(attr.name, "attribute")
            if attr.name in seen:
                raise _fault(
                    f"Attribute '{attr.name}' is declared twice on '{name}'",
                    ConstructionFault.DUPLICATE,
                    subject=f"{name}.{attr.name}",
                )
            seen.add(attr.name)
            for symbol in attr.symbols or ():
                self._check_name(symbol, "symbol")
            if attr.symbols is not None and len(set(attr.symbols)) != len(attr.symbols):
                raise _fault(
                    f"Attribute '{attr.name}' repeats a symbol", ConstructionFault.DUPLICATE, subject=f"{name}.{attr.name}"
                )
            if not attr.accepts(attr.default):
                raise _fault(
                    f"Default {attr.default!r} is outside the domain of '{attr.name}'",
                    ConstructionFault.UNRESOLVED,
                    subject=f"{name}.{attr.name}",
                )

        self._things[name] = ThingKind(name, attrs, self._take_index())
        return name

    def add_sphere(self, path: Sequence[str]) -> str:
        """
        Declare a sphere under an existing parent.

        Args:
            path: Full path of the new sphere; its parent must already exist

        Returns:
            str: Dotted sphere id

        Raises:
            ModelConstructionError: On unknown parent, invalid or duplicate name
        """
        path = tuple(path)
        if not path:
            raise _fault("The root sphere always exists", ConstructionFault.DUPLICATE, subject="<root>")
        self._check_name(path[-1], "sphere")

        parent = path[:-1]
        sphere_id = join_path(path)
        if parent not in self._spheres:
            if parent in self._machines:
                raise _fault(
                    f"Machine '{join_path(parent)}' cannot contain sphere '{path[-1]}'",
                    ConstructionFault.ILLEGAL_MACHINE,
                    subject=sphere_id,
                    rule_code=RuleCodes.MACHINE_SUBSPHERE,
                )
            raise _fault(f"Unknown sphere '{join_path(parent)}'", ConstructionFault.UNRESOLVED, subject=sphere_id)
        if path in self._spheres or path in self._machines:
            raise _fault(f"'{sphere_id}' is already declared", ConstructionFault.DUPLICATE, subject=sphere_id)

        self._spheres[path] = {"parent": parent, "children": [], "machines": [], "index": self._take_index()}
        self._spheres[parent]["children"].append(path[-1])
        return sphere_id

    def add_machine(
        self,
        sphere_path: Sequence[str],
        name: str,
        thing_kind: str,
        stages: Iterable[Union[StageKind, str]],
    ) -> str:
        """
        Declare a machine inside a sphere.

        Args:
            sphere_path: Owning sphere; empty for the root sphere
            name: Machine name, unused in that sphere
            thing_kind: Name of the kind the machine's flow carries
            stages: Stage kinds present, each at most once

        Returns:
            str: Dotted machine id

        Raises:
            ModelConstructionError: On unknown sphere or kind, duplicate names or stages,
                or Receive combined with Arrive/Accept
        """
        owner = tuple(sphere_path)
        self._check_name(name, "machine")
        path = owner + (name,)
        machine_id = join_path(path)

        if owner not in self._spheres:
            if owner in self._machines:
                raise _fault(
                    f"Machine '{join_path(owner)}' cannot contain '{name}'",
                    ConstructionFault.ILLEGAL_MACHINE,
                    subject=machine_id,
                    rule_code=RuleCodes.MACHINE_SUBSPHERE,
                )
            raise _fault(f"Unknown sphere '{join_path(owner)}'", ConstructionFault.UNRESOLVED, subject=machine_id)
        if path in self._machines or path in self._spheres:
            raise _fault(f"'{machine_id}' is already declared", ConstructionFault.DUPLICATE, subject=machine_id)
        if thing_kind not in self._things:
            raise _fault(f"Unknown thing kind '{thing_kind}'", ConstructionFault.UNRESOLVED, subject=machine_id)

        kinds: List[StageKind] = []
        for stage in stages:
            if not isinstance(stage, StageKind):
                try:
                    stage = StageKind.from_name(stage)
                except KeyError:
                    raise _fault(
                        f"Unknown stage kind '{stage}'", ConstructionFault.UNRESOLVED, subject=machine_id
                    ) from None
            if stage in kinds:
                raise _fault(
                    f"Stage '{stage}' appears twice in '{machine_id}'",
                    ConstructionFault.DUPLICATE,
                    subject=machine_id,
                    rule_code=RuleCodes.DUPLICATE_STAGE,
                )
            kinds.append(stage)

        if has_receive_conflict(kinds):
            raise _fault(
                f"Machine '{machine_id}' combines Receive with Arrive/Accept",
                ConstructionFault.ILLEGAL_MACHINE,
                subject=machine_id,
                rule_code=RuleCodes.RECEIVE_CONFLICT,
            )

        ordered = tuple(sorted(kinds, key=lambda kind: kind.ordinal))
        self._machines[path] = Machine(owner, name, ordered, thing_kind, self._take_index())
        self._spheres[owner]["machines"].append(name)
        logger.debug(f"Added machine {machine_id} with stages {[str(s) for s in ordered]}")
        return machine_id

    # Arcs

    def _resolve(self, endpoint: Union[Endpoint, str]) -> Endpoint:
        if isinstance(endpoint, str):
            try:
                endpoint = Endpoint.parse(endpoint)
            except ValueError as e:
                raise _fault(str(e), ConstructionFault.UNRESOLVED, subject=endpoint) from None
        machine = self._machines.get(endpoint.machine_path)
        if machine is None:
            raise _fault(
                f"Unknown machine '{endpoint.machine_id}'",
                ConstructionFault.UNRESOLVED,
                subject=str(endpoint),
                rule_code=RuleCodes.DANGLING_ENDPOINT,
            )
        if not machine.has_stage(endpoint.stage):
            raise _fault(
                f"Machine '{endpoint.machine_id}' has no {endpoint.stage} stage",
                ConstructionFault.UNRESOLVED,
                subject=str(endpoint),
                rule_code=RuleCodes.DANGLING_ENDPOINT,
            )
        return endpoint

    def add_flow_arc(self, source: Union[Endpoint, str], target: Union[Endpoint, str]) -> str:
        """
        Add a solid flow arc between two stages.

        Args:
            source: Stage the flow leaves
            target: Stage the flow enters

        Returns:
            str: Arc id

        Raises:
            ModelConstructionError: On dangling endpoints, a pair outside the legal
                arc table or machines handling different thing kinds
        """
        source = self._resolve(source)
        target = self._resolve(target)
        same_machine = source.machine_path == target.machine_path
        label = f"{source} -> {target}"

        if not is_legal_flow(source.stage, target.stage, same_machine):
            raise _fault(
                f"Illegal flow {label}",
                ConstructionFault.ILLEGAL_ARC,
                subject=label,
                rule_code=RuleCodes.ILLEGAL_FLOW_PAIR,
            )

        source_kind = self._machines[source.machine_path].handles
        target_kind = self._machines[target.machine_path].handles
        if source_kind != target_kind:
            raise _fault(
                f"Flow {label} joins '{source_kind}' and '{target_kind}' machines",
                ConstructionFault.ILLEGAL_ARC,
                subject=label,
                rule_code=RuleCodes.KIND_MISMATCH,
            )

        arc_id = self._take_arc_id()
        self._flows.append(FlowArc(arc_id, source, target, self._take_index()))
        return arc_id

    def _check_guard(self, guard: Optional[Guard], source: Union[Endpoint, JunctionRef], label: str) -> None:
        if guard is None or not isinstance(source, Endpoint):
            return
        kind = self._things[self._machines[source.machine_path].handles]
        for comparison in referenced_attributes(guard):
            attr = kind.attribute(comparison.attribute)
            if attr is None:
                raise _fault(
                    f"Guard references unknown attribute '{comparison.attribute}' of '{kind.name}'",
                    ConstructionFault.UNRESOLVED,
                    subject=label,
                    rule_code=RuleCodes.GUARD_ATTRIBUTE,
                )
            if not attr.accepts(comparison.value):
                raise _fault(
                    f"Guard compares '{attr.name}' with {comparison.value!r}, outside its domain",
                    ConstructionFault.UNRESOLVED,
                    subject=label,
                    rule_code=RuleCodes.GUARD_ATTRIBUTE,
                )

    def add_trigger_arc(
        self,
        source: Union[Endpoint, str],
        target: Union[Endpoint, JunctionRef, str],
        guard: Optional[Guard] = None,
    ) -> str:
        """
        Add a dashed trigger arc.

        Args:
            source: Stage whose activity fires the trigger
            target: Create/Release stage, or a JunctionRef to latch into
            guard: Optional condition evaluated when the trigger fires

        Returns:
            str: Arc id

        Raises:
            ModelConstructionError: On dangling endpoints, illegal target stages,
                unknown junctions or guards comparing attributes outside their domain
        """
        source = self._resolve(source)
        if isinstance(target, JunctionRef):
            if target.name not in self._junctions:
                raise _fault(
                    f"Unknown junction '{target.name}'", ConstructionFault.UNRESOLVED, subject=f"{source} => {target}"
                )
        else:
            target = self._resolve(target)
            if target.stage not in TRIGGER_TARGETS:
                raise _fault(
                    f"Trigger {source} => {target} must target Create or Release",
                    ConstructionFault.ILLEGAL_ARC,
                    subject=f"{source} => {target}",
                    rule_code=RuleCodes.TRIGGER_TARGET,
                )

        label = f"{source} => {target}"
        self._check_guard(guard, source, label)

        arc_id = self._take_arc_id()
        self._triggers.append(TriggerArc(arc_id, source, target, guard, self._take_index()))
        if isinstance(target, JunctionRef):
            self._junctions[target.name]["inputs"].append(arc_id)
        return arc_id

    def add_junction(self, name: str, target: Union[Endpoint, str]) -> str:
        """
        Declare a junction and its output trigger.

        Inputs are attached later by triggers targeting the junction.

        Args:
            name: Junction name, unique within the model
            target: Create/Release stage the junction fires into

        Returns:
            str: Id of the junction's output arc

        Raises:
            ModelConstructionError: On duplicate names, dangling or illegal targets
        """
        self._check_name(name, "junction")
        if name in self._junctions:
            raise _fault(f"Junction '{name}' is already declared", ConstructionFault.DUPLICATE, subject=name)
        target = self._resolve(target)
        if target.stage not in TRIGGER_TARGETS:
            raise _fault(
                f"Junction '{name}' must fire into Create or Release, not {target.stage}",
                ConstructionFault.ILLEGAL_ARC,
                subject=name,
                rule_code=RuleCodes.TRIGGER_TARGET,
            )

        index = self._take_index()
        arc_id = self._take_arc_id()
        self._triggers.append(TriggerArc(arc_id, JunctionRef(name), target, None, self._take_index()))
        self._junctions[name] = {"inputs": [], "output": arc_id, "index": index}
        return arc_id

    # Result

    def _index_of(self, path: SpherePath) -> int:
        if path in self._machines:
            return self._machines[path].index
        return self._spheres[path]["index"]

    def build(self) -> Model:
        """
        Freeze the declarations into a Model.

        Junction arity is not enforced here; validate() reports junctions
        with fewer than two inputs.
        """
        spheres: List[Sphere] = []
        machines: List[Machine] = []

        def visit(path: SpherePath) -> None:
            data = self._spheres[path]
            spheres.append(
                Sphere(path, data["parent"], tuple(data["children"]), tuple(data["machines"]), data["index"])
            )
            contents = [path + (name,) for name in data["children"] + data["machines"]]
            contents.sort(key=lambda item: self._index_of(item))
            for item in contents:
                if item in self._machines:
                    machines.append(self._machines[item])
                else:
                    visit(item)

        # Pre-order over the sphere tree, siblings in declaration order
        visit(())
        junctions = tuple(
            Junction(name, tuple(data["inputs"]), data["output"], data["index"])
            for name, data in self._junctions.items()
        )
        model = Model(
            spheres=tuple(spheres),
            machines=tuple(machines),
            things=tuple(self._things.values()),
            flows=tuple(self._flows),
            triggers=tuple(self._triggers),
            junctions=junctions,
        )
        logger.debug(
            f"Built model: {len(model.machines)} machines, {len(model.flows)} flows, "
            f"{len(model.triggers)} triggers, {len(model.junctions)} junctions"
        )
        return model

