"""
Tests for the token simulator.
"""

from collections import Counter

import pytest

from conftest import CORPUS_DIR, load_corpus_model, load_corpus_scenario
from core.config import FlowkitConfig, set_config
from core.exceptions import ScenarioError, SimulationError
from model.builder import ModelBuilder
from model.elements import Attribute, JunctionRef
from model.stages import StageKind
from simulation.engine import init, run, step
from simulation.scenario import Scenario
from simulation.state import Actions, TokenStatus
from simulation.trace_io import trace_to_jsonl

CORPUS_RUNS = [
    ("book", "default"),
    ("speaker", "default"),
    ("joboffer", "default"),
    ("phosphorus", "default"),
    ("callcenter", "accept"),
    ("callcenter", "decline"),
    ("callcenter", "expired"),
    ("callcenter", "negative"),
]


def _junction_model():
    builder = ModelBuilder()
    builder.add_thing("item")
    builder.add_machine((), "A", "item", ["Create", "Process"])
    builder.add_machine((), "B", "item", ["Create", "Process"])
    builder.add_machine((), "C", "item", ["Create"])
    builder.add_junction("J", "C.Create")
    builder.add_flow_arc("A.Create", "A.Process")
    builder.add_flow_arc("B.Create", "B.Process")
    builder.add_trigger_arc("A.Process", JunctionRef("J"))
    builder.add_trigger_arc("B.Process", JunctionRef("J"))
    return builder.build()


def _accept_model():
    builder = ModelBuilder()
    builder.add_thing("parcel", [Attribute("ok", ("yes", "no"))])
    builder.add_machine((), "Sender", "parcel", ["Create", "Release", "Transfer"])
    builder.add_machine((), "Depot", "parcel", ["Arrive", "Accept", "Process", "Transfer"])
    builder.add_flow_arc("Sender.Create", "Sender.Release")
    builder.add_flow_arc("Sender.Release", "Sender.Transfer")
    builder.add_flow_arc("Sender.Transfer", "Depot.Transfer")
    builder.add_flow_arc("Depot.Transfer", "Depot.Arrive")
    builder.add_flow_arc("Depot.Arrive", "Depot.Accept")
    builder.add_flow_arc("Depot.Accept", "Depot.Process")
    return builder.build()


def _gated_release_model():
    builder = ModelBuilder()
    builder.add_thing("item")
    builder.add_machine((), "Shelf", "item", ["Release", "Transfer", "Storage"])
    builder.add_machine((), "Lib", "item", ["Receive", "Transfer"])
    builder.add_machine((), "Bell", "item", ["Create"])
    builder.add_flow_arc("Shelf.Storage", "Shelf.Release")
    builder.add_flow_arc("Shelf.Release", "Shelf.Transfer")
    builder.add_flow_arc("Shelf.Transfer", "Lib.Transfer")
    builder.add_flow_arc("Lib.Transfer", "Lib.Receive")
    builder.add_trigger_arc("Bell.Create", "Shelf.Release")
    return builder.build()


def _gated_scenario() -> Scenario:
    shelf = {"machine": "Shelf", "stage": "Storage"}
    return Scenario.from_dict({"initial_tokens": [shelf, shelf, {"machine": "Bell", "stage": "Create"}]})


def _parcel_scenario(ok: str) -> Scenario:
    return Scenario.from_dict(
        {
            "initial_tokens": [{"machine": "Sender", "stage": "Create", "attributes": {"ok": ok}}],
            "accept_policy": {"Depot": "ok = yes"},
        }
    )


class TestInit:
    def test_book_starting_condition(self, book_model):
        state = init(book_model, load_corpus_scenario("book"))
        assert state.tick == 0
        [token] = state.live_tokens()
        assert token.machine == ("Shelf", "Book")
        assert str(token.stage) == "Storage"
        assert all(not latched for latched in state.latches.values())
        assert [record.action for record in state.last_records] == [Actions.CREATED]

    def test_empty_scenario(self, book_model):
        state = init(book_model, Scenario())
        assert state.tokens == {}

    @pytest.mark.parametrize(
        "token",
        [
            {"machine": "Shelf.Book", "stage": "Create"},
            {"machine": "Shelf.Book", "stage": "Nowhere"},
            {"machine": "Attic.Book", "stage": "Storage"},
            {"machine": "Shelf.Book", "stage": "Storage", "kind": "scroll"},
            {"machine": "Shelf.Book", "stage": "Storage", "attributes": {"colour": "red"}},
        ],
    )
    def test_bad_initial_tokens(self, book_model, token):
        with pytest.raises(ScenarioError):
            init(book_model, Scenario.from_dict({"initial_tokens": [token]}))

    def test_missing_deadline(self, callcenter_model):
        with pytest.raises(ScenarioError):
            init(callcenter_model, Scenario.from_dict({"bindings": {"response": "accept"}}))

    def test_binding_outside_domain(self, callcenter_model):
        scenario = Scenario.from_dict({"bindings": {"response": "maybe"}, "deadlines": {"response_deadline": 5}})
        with pytest.raises(ScenarioError):
            init(callcenter_model, scenario)

    def test_accept_policy_needs_an_accept_stage(self, book_model):
        with pytest.raises(ScenarioError):
            init(book_model, Scenario.from_dict({"accept_policy": {"Shelf.Book": "tick <= 3"}}))

    def test_invalid_model_is_refused(self):
        builder = ModelBuilder()
        builder.add_thing("item")
        builder.add_machine((), "A", "item", ["Create", "Process"])
        builder.add_machine((), "C", "item", ["Create"])
        builder.add_junction("J", "C.Create")
        builder.add_trigger_arc("A.Process", JunctionRef("J"))
        with pytest.raises(SimulationError) as exc:
            init(builder.build(), Scenario())
        assert exc.value.context["codes"] == ["FM-E008"]

    def test_horizon_falls_back_to_config(self, book_model):
        set_config(FlowkitConfig(corpus_dir=str(CORPUS_DIR), default_max_ticks=7))
        assert init(book_model, Scenario()).max_ticks == 7
        assert init(book_model, Scenario(max_ticks=12)).max_ticks == 12
        assert init(book_model, Scenario(max_ticks=12), max_ticks=3).max_ticks == 3


class TestStep:
    def test_book_moves_one_stage_per_tick(self, book_model):
        state = init(book_model, load_corpus_scenario("book"))
        visited = []
        for _ in range(6):
            state, records = step(state)
            visited.append(f"{records[0].machine}.{records[0].stage}")
        assert visited == [
            "Shelf.Book.Release",
            "Shelf.Book.Transfer",
            "Librarian.Book.Transfer",
            "Librarian.Book.Receive",
            "Librarian.Book.Release",
            "Librarian.Book.Transfer",
        ]
        assert state.tick == 6

    def test_step_leaves_input_state_untouched(self, book_model):
        state = init(book_model, load_corpus_scenario("book"))
        new_state, _ = step(state)
        assert state.tick == 0
        assert str(state.tokens[1].stage) == "Storage"
        assert str(new_state.tokens[1].stage) == "Release"

    def test_trigger_creates_on_next_tick(self, speaker_model):
        state = init(speaker_model, load_corpus_scenario("speaker"))
        state, records = step(state)
        created = [r for r in records if r.action == Actions.CREATED]
        assert [(r.machine, r.tick) for r in created] == [("Speaker.Words", 1)]
        triggered = [r for r in records if r.action == Actions.TRIGGERED]
        assert created[0].cause == triggered[0].seq

    def test_half_latched_junction_waits(self):
        model = _junction_model()
        state = init(model, Scenario.from_dict({"initial_tokens": [{"machine": "A", "stage": "Create"}]}))
        for _ in range(3):
            state, records = step(state)
            assert not [r for r in records if r.action == Actions.JUNCTION_FIRED]
        assert set(state.latches["J"]) == {"a4"}

    def test_gated_release_waits_for_its_trigger(self):
        state = init(_gated_release_model(), _gated_scenario())
        state, records = step(state)
        released = [(r.token, r.machine, r.stage, r.arc) for r in records if r.action == Actions.RELEASED]
        assert released == [(1, "Shelf", "Release", "a5")]
        assert state.tokens[2].stage is StageKind.STORAGE
        assert state.tokens[2].is_live

        state, records = step(state)
        assert [(r.token, r.stage, r.action) for r in records] == [(1, "Transfer", Actions.MOVED)]

    def test_release_takes_the_oldest_waiting_token(self):
        trace = run(_gated_release_model(), _gated_scenario())
        path = [(r.tick, r.machine, r.stage) for r in trace.records if r.token == 1 and r.is_placement]
        assert path[1:] == [
            (1, "Shelf", "Release"),
            (2, "Shelf", "Transfer"),
            (3, "Lib", "Transfer"),
            (4, "Lib", "Receive"),
        ]
        assert [r.action for r in trace.records if r.token == 2] == [Actions.CREATED]
        assert trace.final_tick == 5


class TestRun:
    def test_speaker_timing(self, speaker_model):
        trace = run(speaker_model, load_corpus_scenario("speaker"))
        created = {r.machine: r.tick for r in trace.with_action(Actions.CREATED)}
        assert created == {"Speaker.Concepts": 0, "Speaker.Words": 1, "Listener.Understanding": 6}
        assert trace.final_tick == 7
        assert not trace.truncated

    def test_empty_scenario_is_quiescent(self, book_model):
        trace = run(book_model, Scenario())
        assert len(trace) == 0
        assert trace.final_tick == 0

    def test_truncation(self):
        model = load_corpus_model("phosphorus")
        trace = run(model, load_corpus_scenario("phosphorus"))
        assert trace.truncated
        assert trace.final_tick == 40
        assert max(r.tick for r in trace.records) == 40
        assert trace_to_jsonl(trace).endswith('{"truncated":true,"tick":40}\n')

    def test_max_ticks_override(self):
        model = load_corpus_model("phosphorus")
        trace = run(model, load_corpus_scenario("phosphorus"), max_ticks=5)
        assert trace.truncated
        assert trace.final_tick == 5

    def test_junction_fires_once_both_inputs_latch(self):
        model = _junction_model()
        scenario = Scenario.from_dict(
            {"initial_tokens": [{"machine": "A", "stage": "Create"}, {"machine": "B", "stage": "Create"}]}
        )
        trace = run(model, scenario)
        [fired] = trace.with_action(Actions.JUNCTION_FIRED)
        assert fired.tick == 2
        assert fired.token is None
        assert fired.machine == "C"
        latches = [r for r in trace.with_action(Actions.TRIGGERED) if r.arc in ("a4", "a5")]
        assert fired.cause == max(r.seq for r in latches)
        [minted] = [r for r in trace.with_action(Actions.CREATED) if r.machine == "C"]
        assert minted.cause == fired.seq
        assert minted.arc == "a1"
        assert trace.final_tick == 3

    @pytest.mark.parametrize("ok,action,final_tick", [("yes", Actions.ACCEPTED, 7), ("no", Actions.REJECTED, 5)])
    def test_accept_policy(self, ok, action, final_tick):
        trace = run(_accept_model(), _parcel_scenario(ok))
        at_accept = [r for r in trace.records if r.stage == "Accept"]
        assert [r.action for r in at_accept] == [action]
        assert trace.final_tick == final_tick

    def test_rejected_tokens_stay_inert(self):
        model = _accept_model()
        state = init(model, _parcel_scenario("no"))
        for _ in range(6):
            state, _ = step(state)
        assert state.tokens[1].status is TokenStatus.REJECTED
        assert state.live_tokens() == []

    def test_call_center_accept_timeline(self, callcenter_model):
        trace = run(callcenter_model, load_corpus_scenario("callcenter", "accept"))
        assert trace.with_action(Actions.JUNCTION_FIRED)[0].tick == 15
        assert trace.final_tick == 63


@pytest.mark.parametrize("stem,name", CORPUS_RUNS)
class TestTraceProperties:
    def _trace(self, stem, name):
        return run(load_corpus_model(stem), load_corpus_scenario(stem, name))

    def test_determinism(self, stem, name):
        assert len({trace_to_jsonl(self._trace(stem, name)) for _ in range(5)}) == 1

    def test_sequence_and_ticks(self, stem, name):
        trace = self._trace(stem, name)
        assert [r.seq for r in trace.records] == list(range(len(trace)))
        ticks = [r.tick for r in trace.records]
        assert ticks == sorted(ticks)

    def test_one_placement_per_token_per_tick(self, stem, name):
        trace = self._trace(stem, name)
        placements = Counter((r.tick, r.token) for r in trace.records if r.is_placement)
        assert all(count == 1 for count in placements.values())

    def test_conservation(self, stem, name):
        trace = self._trace(stem, name)
        live = set()
        for record in trace.records:
            if record.action == Actions.CREATED:
                assert record.token not in live
                live.add(record.token)
            elif record.action in (Actions.CONSUMED, Actions.REJECTED):
                assert record.token in live
                live.discard(record.token)
            elif record.is_placement:
                assert record.token in live

    def test_triggers_never_move_tokens(self, stem, name):
        model = load_corpus_model(stem)
        trigger_ids = {arc.id for arc in model.triggers}
        trace = self._trace(stem, name)
        assert not [r for r in trace.with_action(Actions.MOVED) if r.arc in trigger_ids]

    def test_junction_fires_no_more_than_its_inputs_latch(self, stem, name):
        model = load_corpus_model(stem)
        trace = self._trace(stem, name)
        for junction in model.junctions:
            fired = [r for r in trace.with_action(Actions.JUNCTION_FIRED) if r.arc == junction.output]
            latched = Counter(r.arc for r in trace.with_action(Actions.TRIGGERED) if r.arc in junction.inputs)
            assert len(fired) <= min(latched[arc_id] for arc_id in junction.inputs)
