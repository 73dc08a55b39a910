"""
Whole-model validation.

validate() re-checks every structural rule over a finished Model, so models
assembled without the builder (or by hand in tests) get the same checks the
builder enforces, plus the whole-model rules the builder cannot see:
junction arity, guard attributes and inert stages.
"""

import logging
from collections import Counter
from typing import List, Set

import networkx as nx

from analysis.diagnostics import Diagnostic, error, sort_diagnostics, warning
from analysis.reachability import dead_stages
from core.constants import RuleCodes
from model.elements import Endpoint, JunctionRef, Model, TriggerArc
from model.guards import referenced_attributes
from model.stages import TRIGGER_TARGETS, StageKind, has_receive_conflict, is_legal_flow
from utils.validators import join_path

logger = logging.getLogger(__name__)


class ModelValidator:
    """
    Runs every rule in the diagnostic code table over one model.

    Each ``_check_*`` method appends to ``self.diagnostics``.
    """

    def __init__(self, model: Model):
        self.model = model
        self.diagnostics: List[Diagnostic] = []

    def run(self) -> List[Diagnostic]:
        self._check_machines()
        self._check_spheres()
        self._check_flows()
        self._check_triggers()
        self._check_junctions()
        self._check_stage_use()
        return sort_diagnostics(self.diagnostics)

    def _endpoint_ok(self, endpoint, subject: str, index: int) -> bool:
        if isinstance(endpoint, JunctionRef):
            if self.model.junction(endpoint.name) is None:
                self.diagnostics.append(
                    error(RuleCodes.DANGLING_ENDPOINT, f"Unknown junction '{endpoint.name}'", subject, index)
                )
                return False
            return True
        if not self.model.resolves(endpoint):
            self.diagnostics.append(
                error(RuleCodes.DANGLING_ENDPOINT, f"Endpoint '{endpoint}' does not resolve", subject, index)
            )
            return False
        return True

    def _check_machines(self) -> None:
        for machine in self.model.machines:
            counts = Counter(machine.stages)
            for stage, count in counts.items():
                if count > 1:
                    self.diagnostics.append(
                        error(
                            RuleCodes.DUPLICATE_STAGE,
                            f"Stage {stage} appears {count} times",
                            machine.id,
                            machine.index,
                        )
                    )
            if has_receive_conflict(machine.stages):
                self.diagnostics.append(
                    error(RuleCodes.RECEIVE_CONFLICT, "Receive coexists with Arrive/Accept", machine.id, machine.index)
                )
            if self.model.thing(machine.handles) is None:
                self.diagnostics.append(
                    error(
                        RuleCodes.DANGLING_ENDPOINT,
                        f"Machine handles unknown thing kind '{machine.handles}'",
                        machine.id,
                        machine.index,
                    )
                )

    def _check_spheres(self) -> None:
        machine_paths = {machine.path for machine in self.model.machines}
        tree = nx.DiGraph()
        for sphere in self.model.spheres:
            tree.add_node(sphere.path)
            if sphere.parent is None:
                continue
            if sphere.parent in machine_paths:
                self.diagnostics.append(
                    error(
                        RuleCodes.MACHINE_SUBSPHERE,
                        f"Machine '{join_path(sphere.parent)}' contains sphere '{sphere.name}'",
                        join_path(sphere.parent),
                        sphere.index,
                    )
                )
            tree.add_edge(sphere.parent, sphere.path)

        for cycle in nx.simple_cycles(tree):
            first = min(cycle)
            self.diagnostics.append(
                error(
                    RuleCodes.SPHERE_CYCLE,
                    "Sphere containment forms a cycle: " + " -> ".join(join_path(path) for path in cycle),
                    join_path(first),
                    self.model.sphere(first).index,
                )
            )

    def _check_flows(self) -> None:
        for arc in self.model.flows:
            source_ok = self._endpoint_ok(arc.source, arc.id, arc.index)
            target_ok = self._endpoint_ok(arc.target, arc.id, arc.index)
            if not (source_ok and target_ok):
                continue
            if not is_legal_flow(arc.source.stage, arc.target.stage, not arc.crosses_machines):
                self.diagnostics.append(
                    error(
                        RuleCodes.ILLEGAL_FLOW_PAIR,
                        f"Illegal flow {arc.source} -> {arc.target}",
                        arc.id,
                        arc.index,
                    )
                )
            source_kind = self.model.machine(arc.source.machine_path).handles
            target_kind = self.model.machine(arc.target.machine_path).handles
            if source_kind != target_kind:
                self.diagnostics.append(
                    error(
                        RuleCodes.KIND_MISMATCH,
                        f"Flow joins '{source_kind}' and '{target_kind}' machines",
                        arc.id,
                        arc.index,
                    )
                )

    def _check_guard(self, arc: TriggerArc) -> None:
        if arc.guard is None or not isinstance(arc.source, Endpoint):
            return
        kind = self.model.kind_of(arc.source)
        if kind is None:
            return
        for comparison in referenced_attributes(arc.guard):
            attr = kind.attribute(comparison.attribute)
            if attr is None:
                message = f"Guard references unknown attribute '{comparison.attribute}' of '{kind.name}'"
            elif not attr.accepts(comparison.value):
                message = f"Guard compares '{attr.name}' with {comparison.value!r}, outside its domain"
            else:
                continue
            self.diagnostics.append(error(RuleCodes.GUARD_ATTRIBUTE, message, arc.id, arc.index))

    def _check_triggers(self) -> None:
        for arc in self.model.triggers:
            source_ok = self._endpoint_ok(arc.source, arc.id, arc.index)
            target_ok = self._endpoint_ok(arc.target, arc.id, arc.index)
            if target_ok and isinstance(arc.target, Endpoint) and arc.target.stage not in TRIGGER_TARGETS:
                self.diagnostics.append(
                    error(
                        RuleCodes.TRIGGER_TARGET,
                        f"Trigger targets {arc.target.stage}, not Create or Release",
                        arc.id,
                        arc.index,
                    )
                )
            if source_ok:
                self._check_guard(arc)

    def _check_junctions(self) -> None:
        for junction in self.model.junctions:
            if len(junction.inputs) < 2:
                self.diagnostics.append(
                    error(
                        RuleCodes.JUNCTION_ARITY,
                        f"Junction has {len(junction.inputs)} input(s); at least 2 required",
                        junction.name,
                        junction.index,
                    )
                )
            for arc_id in (*junction.inputs, junction.output):
                if self.model.arc(arc_id) is None:
                    self.diagnostics.append(
                        error(
                            RuleCodes.DANGLING_ENDPOINT,
                            f"Junction refers to unknown arc '{arc_id}'",
                            junction.name,
                            junction.index,
                        )
                    )

    def _check_stage_use(self) -> None:
        touched: Set[Endpoint] = set()
        read_storage: Set[Endpoint] = set()
        for arc in self.model.arcs:
            touched.update(node for node in (arc.source, arc.target) if isinstance(node, Endpoint))
        for arc in self.model.flows:
            if arc.source.stage is StageKind.STORAGE:
                read_storage.add(arc.source)

        dead = dead_stages(self.model)
        for machine in self.model.machines:
            for endpoint in dict.fromkeys(machine.endpoints()):
                subject = str(endpoint)
                if endpoint.stage is StageKind.STORAGE:
                    if endpoint not in read_storage:
                        self.diagnostics.append(
                            warning(RuleCodes.UNREAD_STORAGE, "Storage has no outgoing flow", subject, machine.index)
                        )
                elif endpoint not in touched:
                    self.diagnostics.append(
                        warning(RuleCodes.INERT_STAGE, "Stage has no incident arc", subject, machine.index)
                    )
                elif endpoint in dead:
                    self.diagnostics.append(
                        warning(RuleCodes.INERT_STAGE, "Stage is unreachable from any flow origin", subject, machine.index)
                    )


def validate(model: Model) -> List[Diagnostic]:
    """
    Check a model against every rule in the diagnostic code table.

    Args:
        model: Model to check

    Returns:
        List[Diagnostic]: Findings sorted by (severity, code, subject declaration index);
            empty when the model passes every rule
    """
    diagnostics = ModelValidator(model).run()
    errors = sum(1 for diag in diagnostics if diag.is_error)
    logger.info(f"Validation finished: {errors} errors, {len(diagnostics) - errors} warnings")
    return diagnostics


def has_errors(diagnostics: List[Diagnostic]) -> bool:
    return any(diag.is_error for diag in diagnostics)
