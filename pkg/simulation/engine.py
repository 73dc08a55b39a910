"""
Deterministic tick-based token simulator.

Each step produces tick ``t + 1`` from the state at tick ``t`` in four
phases:

1. Flow moves, computed from the pre-tick state and applied in arc
   declaration order. A token takes at most one arc per tick; among its
   enabled arcs the lowest declaration index wins. A token with no usable
   outgoing arc is consumed, unless it is in Storage or waiting for a
   trigger-gated Release.
2. Tokens entering an Accept stage are checked against the machine's accept
   policy and recorded as accepted or rejected.
3. Trigger arcs whose source stage was active at tick ``t`` fire, once per
   arc, for the earliest active token whose guard holds. Create targets mint
   a token, Release targets release the oldest waiting token, junction
   targets latch.
4. Junctions with every input latched fire their output and clear.
"""

import logging
from typing import Dict, List, Optional, Tuple

from analysis.validator import has_errors, validate
from core.config import get_config
from core.exceptions import ScenarioError, SimulationError, ValidationError
from dsl.parser import parse_guard
from model.elements import Endpoint, FlowArc, JunctionRef, Machine, Model, SpherePath, TriggerArc
from model.guards import Guard, Value, eval_guard, referenced_attributes, referenced_deadlines
from model.stages import StageKind
from simulation.scenario import Scenario
from simulation.state import Actions, EventTrace, SimState, Token, TokenStatus, Topology, TraceRecord
from utils.validators import join_path, split_path

logger = logging.getLogger(__name__)


# Initialization


def _machine_or_fail(model: Model, path: str, field: str) -> Machine:
    machine = model.machine(path)
    if machine is None:
        raise ScenarioError(f"Unknown machine '{path}'", field=field)
    return machine


def _check_deadlines(guard: Guard, scenario: Scenario, where: str) -> None:
    for name in referenced_deadlines(guard):
        if name not in scenario.deadlines:
            raise ScenarioError(f"Deadline '{name}' used by {where} is not defined", field="deadlines")


def _compile_accept_policy(model: Model, scenario: Scenario) -> Dict[SpherePath, Guard]:
    policy: Dict[SpherePath, Guard] = {}
    for path, text in scenario.accept_policy.items():
        field = f"accept_policy.{path}"
        machine = _machine_or_fail(model, path, field)
        if not machine.has_stage(StageKind.ACCEPT):
            raise ScenarioError(f"Machine '{path}' has no Accept stage", field=field)
        try:
            guard = parse_guard(text)
        except ValidationError as e:
            raise ScenarioError(e.message, field=field) from e

        kind = model.thing(machine.handles)
        for comparison in referenced_attributes(guard):
            if kind.attribute(comparison.attribute) is None and comparison.attribute not in scenario.bindings:
                raise ScenarioError(f"Accept policy references unknown name '{comparison.attribute}'", field=field)
        _check_deadlines(guard, scenario, f"the accept policy of '{path}'")
        policy[machine.path] = guard
    return policy


def _check_bindings(model: Model, scenario: Scenario) -> None:
    for name, value in scenario.bindings.items():
        for kind in model.things:
            attr = kind.attribute(name)
            if attr is not None and not attr.accepts(value):
                raise ScenarioError(
                    f"Binding {name}={value!r} is outside the domain of '{kind.name}.{name}'", field="bindings"
                )


def _attributes_for(model: Model, kind_name: str, scenario: Scenario, *sources: Dict[str, Value]) -> Dict[str, Value]:
    """Attribute values for a new token: the first source holding a valid value wins, then bindings, then defaults."""
    kind = model.thing(kind_name)
    values: Dict[str, Value] = {}
    for attr in kind.attributes:
        for source in (*sources, scenario.bindings):
            if attr.name in source and attr.accepts(source[attr.name]):
                values[attr.name] = source[attr.name]
                break
        else:
            values[attr.name] = attr.default
    return values


def _place_initial_tokens(state: SimState) -> List[TraceRecord]:
    model, scenario = state.model, state.scenario
    records: List[TraceRecord] = []
    for position, initial in enumerate(scenario.initial_tokens):
        field = f"initial_tokens.{position}"
        machine = _machine_or_fail(model, initial.machine, field)
        try:
            stage = StageKind.from_name(initial.stage)
        except KeyError:
            raise ScenarioError(f"Unknown stage '{initial.stage}'", field=field) from None
        if not machine.has_stage(stage):
            raise ScenarioError(f"Machine '{machine.id}' has no {stage} stage", field=field)
        if initial.kind is not None and initial.kind != machine.handles:
            raise ScenarioError(
                f"Machine '{machine.id}' carries '{machine.handles}', not '{initial.kind}'", field=field
            )

        kind = model.thing(machine.handles)
        for name, value in initial.attributes.items():
            attr = kind.attribute(name)
            if attr is None or not attr.accepts(value):
                raise ScenarioError(f"Invalid attribute {name}={value!r} for '{kind.name}'", field=field)

        token = Token(
            id=state.next_token_id,
            kind=kind.name,
            attributes=_attributes_for(model, kind.name, scenario, initial.attributes),
            machine=machine.path,
            stage=stage,
            last_seq=state.next_seq,
        )
        record = TraceRecord(state.next_seq, 0, machine.id, str(stage), token.id, Actions.CREATED)
        state.tokens[token.id] = token
        state.next_token_id += 1
        state.next_seq += 1
        records.append(record)
    return records


def init(model: Model, scenario: Scenario, max_ticks: Optional[int] = None) -> SimState:
    """
    Prepare a simulation at tick 0.

    Args:
        model: Model to simulate; it must validate without errors
        scenario: External inputs
        max_ticks: Horizon override; defaults to the scenario's, then the configured default

    Returns:
        SimState: Initial tokens placed (announced by ``created`` records at tick 0), latches empty

    Raises:
        SimulationError: If the model has validation errors
        ScenarioError: If the scenario references unknown machines, kinds, stages,
            attributes or deadlines
    """
    diagnostics = validate(model)
    if has_errors(diagnostics):
        codes = sorted({diag.code for diag in diagnostics if diag.is_error})
        raise SimulationError("Model has validation errors", context={"codes": codes})

    for arc in model.triggers:
        if arc.guard is not None:
            _check_deadlines(arc.guard, scenario, f"trigger {arc.id}")
    _check_bindings(model, scenario)

    horizon = max_ticks or scenario.max_ticks or get_config().default_max_ticks
    if horizon < 1:
        raise ScenarioError("max_ticks must be at least 1", field="max_ticks")

    state = SimState(
        model=model,
        scenario=scenario,
        max_ticks=horizon,
        topology=Topology.of(model),
        accept_policy=_compile_accept_policy(model, scenario),
        latches={junction.name: {} for junction in model.junctions},
    )
    state.last_records = tuple(_place_initial_tokens(state))
    logger.info(f"Simulation initialized: {len(state.tokens)} tokens, horizon {horizon}")
    return state


# Stepping


class _TickBuilder:
    """Builds one tick on a cloned state."""

    def __init__(self, state: SimState):
        self.state = state
        self.model = state.model
        self.topology = state.topology
        self.tick = state.tick + 1
        self.records: List[TraceRecord] = []
        self.placed = set()

    def emit(
        self,
        machine: SpherePath,
        stage: StageKind,
        token: Optional[int],
        action: str,
        arc: Optional[str] = None,
        cause: Optional[int] = None,
    ) -> TraceRecord:
        record = TraceRecord(self.state.next_seq, self.tick, join_path(machine), str(stage), token, action, arc, cause)
        self.state.next_seq += 1
        self.records.append(record)
        if record.is_placement:
            self.placed.add(token)
            if token in self.state.tokens:
                self.state.tokens[token].last_seq = record.seq
        return record

    def _guard_holds(self, guard: Optional[Guard], token: Optional[Token]) -> bool:
        if guard is None:
            return True
        attributes = token.attributes if token is not None else {}
        return eval_guard(guard, attributes, self.state.bindings, self.tick, self.state.deadlines)

    # Phase 1 and 2

    def _usable_arcs(self, token: Token) -> Tuple[FlowArc, ...]:
        arcs = self.topology.outgoing.get(token.endpoint, ())
        if token.stage is StageKind.TRANSFER:
            # Inbound tokens continue into their machine; outbound tokens leave it
            arcs = tuple(arc for arc in arcs if arc.crosses_machines != token.inbound)
        return arcs

    def _flow_phase(self) -> None:
        moves: List[Tuple[FlowArc, Token]] = []
        consumed: List[Token] = []
        for token in sorted(self.state.live_tokens(), key=lambda t: t.id):
            usable = self._usable_arcs(token)
            open_arcs = [arc for arc in usable if arc.target not in self.topology.gated]
            if open_arcs:
                moves.append((open_arcs[0], token))
            elif not usable and token.stage is not StageKind.STORAGE:
                consumed.append(token)

        for arc, token in sorted(moves, key=lambda move: (move[0].index, move[1].id)):
            self._move(token, arc)
        for token in consumed:
            token.status = TokenStatus.CONSUMED
            self.emit(token.machine, token.stage, token.id, Actions.CONSUMED, cause=token.last_seq)

    def _move(self, token: Token, arc: FlowArc) -> None:
        cause = token.last_seq
        target = arc.target
        token.machine = target.machine_path
        token.stage = target.stage
        token.inbound = arc.crosses_machines
        token.entered_tick = self.tick

        if target.stage is StageKind.STORAGE:
            action = Actions.STORED
        elif target.stage is StageKind.ACCEPT:
            policy = self.state.accept_policy.get(target.machine_path)
            if self._guard_holds(policy, token):
                action = Actions.ACCEPTED
            else:
                action = Actions.REJECTED
                token.status = TokenStatus.REJECTED
        else:
            action = Actions.MOVED
        self.emit(target.machine_path, target.stage, token.id, action, arc.id, cause)

    # Phase 3 and 4

    def _activity(self) -> Dict[Endpoint, List[TraceRecord]]:
        active: Dict[Endpoint, List[TraceRecord]] = {}
        for record in self.state.last_records:
            if record.action in Actions.ACTIVITY:
                machine = tuple(split_path(record.machine))
                endpoint = Endpoint(machine[:-1], machine[-1], StageKind.from_name(record.stage))
                active.setdefault(endpoint, []).append(record)
        return active

    def _trigger_phase(self) -> None:
        active = self._activity()
        for arc in self.topology.triggers:
            for record in active.get(arc.source, ()):
                token = self.state.tokens.get(record.token)
                if self._guard_holds(arc.guard, token):
                    self._fire(arc, record, token)
                    break

    def _fire(self, arc: TriggerArc, record: TraceRecord, token: Token) -> None:
        source: Endpoint = arc.source
        fired = self.emit(source.machine_path, source.stage, token.id, Actions.TRIGGERED, arc.id, record.seq)
        if isinstance(arc.target, JunctionRef):
            self.state.latches[arc.target.name].setdefault(arc.id, (fired.seq, token.id))
        else:
            self._effect(arc.target, arc.id, fired.seq, token)

    def _effect(self, target: Endpoint, arc_id: str, cause: int, source: Optional[Token]) -> None:
        if target.stage is StageKind.CREATE:
            self._mint(target, arc_id, cause, source)
        else:
            self._release(target, arc_id, cause)

    def _mint(self, target: Endpoint, arc_id: str, cause: int, source: Optional[Token]) -> None:
        machine = self.model.machine(target.machine_path)
        inherited = source.attributes if source is not None else {}
        token = Token(
            id=self.state.next_token_id,
            kind=machine.handles,
            attributes=_attributes_for(self.model, machine.handles, self.state.scenario, inherited),
            machine=machine.path,
            stage=StageKind.CREATE,
            entered_tick=self.tick,
        )
        self.state.tokens[token.id] = token
        self.state.next_token_id += 1
        self.emit(machine.path, StageKind.CREATE, token.id, Actions.CREATED, arc_id, cause)

    def _release(self, target: Endpoint, arc_id: str, cause: int) -> None:
        feeders = self.topology.feeders.get(target, frozenset())
        waiting = [
            token
            for token in self.state.live_tokens()
            if token.machine == target.machine_path and token.stage in feeders and token.id not in self.placed
        ]
        if not waiting:
            logger.debug(f"Tick {self.tick}: nothing to release at {target}")
            return
        token = min(waiting, key=lambda t: (t.entered_tick, t.id))
        token.stage = StageKind.RELEASE
        token.inbound = False
        token.entered_tick = self.tick
        self.emit(target.machine_path, StageKind.RELEASE, token.id, Actions.RELEASED, arc_id, cause)

    def _junction_phase(self) -> None:
        for junction in self.model.junctions:
            latched = self.state.latches[junction.name]
            if not junction.inputs or any(arc_id not in latched for arc_id in junction.inputs):
                continue
            seq, token_id = max(latched.values())
            output = self.model.arc(junction.output)
            target: Endpoint = output.target
            fired = self.emit(target.machine_path, target.stage, None, Actions.JUNCTION_FIRED, output.id, seq)
            self._effect(target, output.id, fired.seq, self.state.tokens.get(token_id))
            latched.clear()

    def build(self) -> List[TraceRecord]:
        self._flow_phase()
        self._trigger_phase()
        self._junction_phase()
        return self.records


def step(state: SimState) -> Tuple[SimState, List[TraceRecord]]:
    """
    Advance a simulation by one tick.

    The given state is left untouched.

    Args:
        state: State at tick t

    Returns:
        Tuple[SimState, List[TraceRecord]]: State at tick t + 1 and the records produced for it
    """
    new_state = state.clone()
    records = _TickBuilder(new_state).build()
    new_state.tick = state.tick + 1
    new_state.last_records = tuple(records)
    logger.debug(f"Tick {new_state.tick}: {len(records)} records")
    return new_state, records


def run(model: Model, scenario: Scenario, max_ticks: Optional[int] = None) -> EventTrace:
    """
    Simulate until quiescence or the tick horizon.

    A tick that produces no records means nothing can change any more; the
    trace then ends at the previous tick. Reaching the horizon while still
    active marks the trace truncated.

    Args:
        model: Model to simulate
        scenario: External inputs
        max_ticks: Horizon override

    Returns:
        EventTrace: Every record in order, the last tick with activity and the truncation flag
    """
    state = init(model, scenario, max_ticks)
    trace = EventTrace(records=list(state.last_records))

    while True:
        new_state, records = step(state)
        if not records:
            break
        if new_state.tick > state.max_ticks:
            trace.truncated = True
            logger.warning(f"Simulation truncated at tick {state.max_ticks}")
            break
        trace.records.extend(records)
        trace.final_tick = new_state.tick
        state = new_state

    logger.info(f"Simulation finished at tick {trace.final_tick} with {len(trace.records)} records")
    return trace
