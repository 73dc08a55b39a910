"""
Event extraction: segments a trace into per-machine events and orders them causally.

An event is a maximal run of consecutive ticks during which one machine has
at least one trace record. Two events are causally ordered when a record of
the first is the recorded cause of a record of the second.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Tuple

import networkx as nx

from core.exceptions import SimulationError
from model.elements import Model
from simulation.state import EventTrace, TraceRecord

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Event:
    """A slice of time during which one machine is active."""

    id: int
    machine: str
    start: int
    end: int
    records: Tuple[TraceRecord, ...] = field(compare=False)

    @property
    def duration(self) -> int:
        return self.end - self.start + 1

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "machine": self.machine,
            "start": self.start,
            "end": self.end,
            "records": [record.seq for record in self.records],
        }


@dataclass
class Process:
    """
    Events of one run with their causal order.

    ``graph`` holds one node per event id and an edge (a, b) whenever a record
    of event a caused a record of event b.
    """

    events: List[Event] = field(default_factory=list)
    graph: nx.DiGraph = field(default_factory=nx.DiGraph)

    def __len__(self) -> int:
        return len(self.events)

    @property
    def causal_order(self) -> List[Tuple[int, int]]:
        return sorted(self.graph.edges())

    def event(self, event_id: int) -> Event:
        return self.events[event_id]

    def events_of(self, machine: str) -> List[Event]:
        return [event for event in self.events if event.machine == machine]

    def precedes(self, first: Event, second: Event) -> bool:
        """Whether ``first`` transitively causes ``second``."""
        if first.id == second.id:
            return False
        return nx.has_path(self.graph, first.id, second.id)

    def is_acyclic(self) -> bool:
        return nx.is_directed_acyclic_graph(self.graph)

    def to_dict(self) -> dict:
        return {
            "events": [event.to_dict() for event in self.events],
            "causal_order": [list(edge) for edge in self.causal_order],
        }


def _segments(records: Iterable[TraceRecord]) -> List[List[TraceRecord]]:
    """Split one machine's records (in trace order) into runs of consecutive ticks."""
    runs: List[List[TraceRecord]] = []
    for record in records:
        if runs and record.tick - runs[-1][-1].tick <= 1:
            runs[-1].append(record)
        else:
            runs.append([record])
    return runs


def extract_events(trace: EventTrace, model: Model) -> Process:
    """
    Segment a trace into events and derive their causal order.

    Args:
        trace: Trace produced by running ``model``
        model: The simulated model

    Returns:
        Process: Events sorted by (start tick, first record) with causal edges

    Raises:
        SimulationError: If a record names a machine the model does not contain
    """
    by_machine: Dict[str, List[TraceRecord]] = {}
    for record in trace.records:
        if model.machine(record.machine) is None:
            raise SimulationError(
                f"Trace record {record.seq} names unknown machine '{record.machine}'",
                context={"machine": record.machine},
            )
        by_machine.setdefault(record.machine, []).append(record)

    runs = [run for records in by_machine.values() for run in _segments(records)]
    runs.sort(key=lambda run: (run[0].tick, run[0].seq))

    events = [
        Event(id=i, machine=run[0].machine, start=run[0].tick, end=run[-1].tick, records=tuple(run))
        for i, run in enumerate(runs)
    ]

    graph = nx.DiGraph()
    graph.add_nodes_from(event.id for event in events)
    owner = {record.seq: event.id for event in events for record in event.records}
    for event in events:
        for record in event.records:
            if record.cause is None or record.cause not in owner:
                continue
            source = owner[record.cause]
            if source != event.id:
                graph.add_edge(source, event.id)

    process = Process(events=events, graph=graph)
    logger.info(f"Extracted {len(events)} events with {graph.number_of_edges()} causal edges")
    return process
