"""
Stage kinds of the flow machine and the table of legal flow arcs.

A flow machine has a closed set of stages. Storage is an attachment rather
than an exclusive stage; every other kind holds an atomic thing exclusively.
"""

from enum import Enum
from typing import FrozenSet, Tuple


class StageKind(Enum):
    """The closed set of machine stages, in canonical order."""

    CREATE = "Create"
    ARRIVE = "Arrive"
    ACCEPT = "Accept"
    RECEIVE = "Receive"
    PROCESS = "Process"
    RELEASE = "Release"
    TRANSFER = "Transfer"
    STORAGE = "Storage"

    @classmethod
    def from_name(cls, name: str) -> "StageKind":
        """Look up a stage kind by its capitalized DSL name."""
        for kind in cls:
            if kind.value == name:
                return kind
        raise KeyError(name)

    @classmethod
    def names(cls) -> Tuple[str, ...]:
        return tuple(kind.value for kind in cls)

    @property
    def ordinal(self) -> int:
        return _ORDER[self]

    @property
    def is_exclusive(self) -> bool:
        return self is not StageKind.STORAGE

    def __str__(self) -> str:
        return self.value


_ORDER = {kind: i for i, kind in enumerate(StageKind)}

S = StageKind

# Stages a trigger may fire into
TRIGGER_TARGETS: FrozenSet[StageKind] = frozenset({S.CREATE, S.RELEASE})

# Stages that Storage attaches to, in both directions
_STORAGE_NEIGHBOURS = (S.ACCEPT, S.RECEIVE, S.PROCESS, S.CREATE, S.RELEASE)

# Intra-machine solid flows
INTRA_MACHINE_ARCS: FrozenSet[Tuple[StageKind, StageKind]] = frozenset(
    {
        (S.ARRIVE, S.ACCEPT),
        (S.ACCEPT, S.PROCESS),
        (S.ACCEPT, S.RELEASE),
        (S.RECEIVE, S.PROCESS),
        (S.RECEIVE, S.RELEASE),
        (S.PROCESS, S.RELEASE),
        (S.CREATE, S.PROCESS),
        (S.CREATE, S.RELEASE),
        (S.RELEASE, S.TRANSFER),
        (S.TRANSFER, S.ARRIVE),
        (S.TRANSFER, S.RECEIVE),
    }
    | {(S.STORAGE, other) for other in _STORAGE_NEIGHBOURS}
    | {(other, S.STORAGE) for other in _STORAGE_NEIGHBOURS}
)

# Cross-machine solid flows
CROSS_MACHINE_ARCS: FrozenSet[Tuple[StageKind, StageKind]] = frozenset({(S.TRANSFER, S.TRANSFER)})


def is_legal_flow(source: StageKind, target: StageKind, same_machine: bool) -> bool:
    """
    Check a stage pair against the legal arc table.

    Args:
        source: Stage the flow leaves
        target: Stage the flow enters
        same_machine: Whether both stages belong to one machine

    Returns:
        bool: True when the pair may carry a flow arc
    """
    table = INTRA_MACHINE_ARCS if same_machine else CROSS_MACHINE_ARCS
    return (source, target) in table


def has_receive_conflict(stages) -> bool:
    """Receive merges Arrive and Accept, so it cannot appear with either."""
    present = set(stages)
    return S.RECEIVE in present and bool(present & {S.ARRIVE, S.ACCEPT})
