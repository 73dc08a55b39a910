"""
Simulation state: tokens, trace records and the per-run state snapshot.
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Tuple

from core.constants import FIRST_TOKEN_ID, TRACE_FIELDS
from model.elements import Endpoint, FlowArc, Model, SpherePath, TriggerArc
from model.guards import Guard, Value
from model.stages import StageKind
from simulation.scenario import Scenario


class Actions:
    """Trace record actions."""

    CREATED = "created"
    MOVED = "moved"
    ACCEPTED = "accepted"
    REJECTED = "rejected"
    STORED = "stored"
    RELEASED = "released"
    TRIGGERED = "triggered"
    JUNCTION_FIRED = "junction-fired"
    CONSUMED = "consumed"

    # Actions that put a token at a location
    PLACEMENT = frozenset({CREATED, MOVED, ACCEPTED, REJECTED, STORED, RELEASED})

    # Actions that count as stage activity for triggers
    ACTIVITY = frozenset({CREATED, MOVED, ACCEPTED, STORED, RELEASED})


@dataclass(frozen=True)
class Topology:
    """
    Model facts the stepper looks up every tick.

    Attributes:
        outgoing: Flow arcs leaving each stage, in declaration order
        gated: Release stages some trigger fires into; flows never enter them on their own
        feeders: Stages with a flow into each Release stage
        triggers: Stage-sourced trigger arcs in declaration order
    """

    outgoing: Dict[Endpoint, Tuple[FlowArc, ...]]
    gated: FrozenSet[Endpoint]
    feeders: Dict[Endpoint, FrozenSet[StageKind]]
    triggers: Tuple[TriggerArc, ...]

    @classmethod
    def of(cls, model: Model) -> "Topology":
        outgoing: Dict[Endpoint, List[FlowArc]] = {endpoint: [] for endpoint in model.endpoints()}
        feeders: Dict[Endpoint, set] = {}
        for arc in model.flows:
            outgoing.setdefault(arc.source, []).append(arc)
            if arc.target.stage is StageKind.RELEASE and not arc.crosses_machines:
                feeders.setdefault(arc.target, set()).add(arc.source.stage)
        gated = frozenset(
            arc.target
            for arc in model.triggers
            if isinstance(arc.target, Endpoint) and arc.target.stage is StageKind.RELEASE
        )
        return cls(
            outgoing={endpoint: tuple(arcs) for endpoint, arcs in outgoing.items()},
            gated=gated,
            feeders={endpoint: frozenset(stages) for endpoint, stages in feeders.items()},
            triggers=tuple(arc for arc in model.triggers if not arc.is_junction_output),
        )


class TokenStatus(Enum):
    LIVE = "live"
    CONSUMED = "consumed"
    REJECTED = "rejected"


@dataclass
class Token:
    """
    One instance of a thing kind.

    ``inbound`` is only meaningful at a Transfer stage: True when the token
    arrived over a cross-machine arc and must continue into its machine.
    """

    id: int
    kind: str
    attributes: Dict[str, Value]
    machine: SpherePath
    stage: StageKind
    status: TokenStatus = TokenStatus.LIVE
    inbound: bool = False
    entered_tick: int = 0
    last_seq: Optional[int] = None

    @property
    def is_live(self) -> bool:
        return self.status is TokenStatus.LIVE

    @property
    def endpoint(self) -> Endpoint:
        return Endpoint(self.machine[:-1], self.machine[-1], self.stage)


@dataclass(frozen=True)
class TraceRecord:
    """One stage action at one tick."""

    seq: int
    tick: int
    machine: str
    stage: str
    token: Optional[int]
    action: str
    arc: Optional[str] = None
    cause: Optional[int] = None

    @property
    def is_placement(self) -> bool:
        return self.action in Actions.PLACEMENT and self.token is not None

    def to_dict(self) -> dict:
        """Fields in the fixed trace field order."""
        return {name: getattr(self, name) for name in TRACE_FIELDS}

    @classmethod
    def from_dict(cls, data: dict) -> "TraceRecord":
        return cls(**{name: data.get(name) for name in TRACE_FIELDS})


@dataclass
class EventTrace:
    """Complete output of a run."""

    records: List[TraceRecord] = field(default_factory=list)
    final_tick: int = 0
    truncated: bool = False

    def __len__(self) -> int:
        return len(self.records)

    def at_tick(self, tick: int) -> List[TraceRecord]:
        return [record for record in self.records if record.tick == tick]

    def with_action(self, action: str) -> List[TraceRecord]:
        return [record for record in self.records if record.action == action]


@dataclass
class SimState:
    """
    Everything a step needs.

    The model and the compiled scenario inputs are shared between snapshots;
    tokens and junction latches are copied by ``clone()``.
    """

    model: Model
    scenario: Scenario
    max_ticks: int
    topology: Topology
    accept_policy: Dict[SpherePath, Guard] = field(default_factory=dict)
    tick: int = 0
    tokens: Dict[int, Token] = field(default_factory=dict)
    latches: Dict[str, Dict[str, Tuple[int, Optional[int]]]] = field(default_factory=dict)
    next_token_id: int = FIRST_TOKEN_ID
    next_seq: int = 0
    last_records: Tuple[TraceRecord, ...] = ()

    def clone(self) -> "SimState":
        return replace(
            self,
            tokens={tid: replace(token, attributes=dict(token.attributes)) for tid, token in self.tokens.items()},
            latches={name: dict(latched) for name, latched in self.latches.items()},
        )

    def live_tokens(self) -> List[Token]:
        return [token for token in self.tokens.values() if token.is_live]

    @property
    def bindings(self) -> Dict[str, Value]:
        return self.scenario.bindings

    @property
    def deadlines(self) -> Dict[str, int]:
        return self.scenario.deadlines
