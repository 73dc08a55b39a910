"""
Tests for whole-model validation.

Each faulty model is the clean book model with one defect injected through
dataclasses.replace, so the validator sees shapes the builder would refuse.
"""

from dataclasses import replace

import pytest

from conftest import load_corpus_model

from analysis.diagnostics import count_by_severity, sort_diagnostics
from analysis.validator import has_errors, validate
from core.constants import RuleCodes, Severity
from model.elements import Endpoint, FlowArc, Junction, JunctionRef, Machine, Sphere, ThingKind, TriggerArc
from model.guards import AttributeEquals
from model.stages import StageKind

SHELF_RELEASE = Endpoint(("Shelf",), "Book", StageKind.RELEASE)
LIBRARIAN_TRANSFER = Endpoint(("Librarian",), "Book", StageKind.TRANSFER)


def _codes(model):
    return [diag.code for diag in validate(model)]


def _with_machine(model, machine_id, **changes):
    machines = tuple(replace(m, **changes) if m.id == machine_id else m for m in model.machines)
    return replace(model, machines=machines)


def test_clean_model_has_no_findings(book_model):
    assert validate(book_model) == []
    assert not has_errors([])


def test_duplicate_stage(book_model):
    model = _with_machine(
        book_model,
        "Shelf.Book",
        stages=(StageKind.RELEASE, StageKind.RELEASE, StageKind.TRANSFER, StageKind.STORAGE),
    )
    assert _codes(model) == [RuleCodes.DUPLICATE_STAGE]


def test_illegal_flow_pair(book_model):
    bad = FlowArc("a90", SHELF_RELEASE, LIBRARIAN_TRANSFER, index=90)
    model = replace(book_model, flows=book_model.flows + (bad,))
    diagnostics = validate(model)
    assert [(d.code, d.subject) for d in diagnostics] == [(RuleCodes.ILLEGAL_FLOW_PAIR, "a90")]


def test_machine_with_subsphere(book_model):
    inner = Sphere(("Shelf", "Book", "Inner"), parent=("Shelf", "Book"), index=90)
    model = replace(book_model, spheres=book_model.spheres + (inner,))
    assert _codes(model) == [RuleCodes.MACHINE_SUBSPHERE]


def test_dangling_endpoint(book_model):
    ghost = Endpoint(("Nowhere",), "Book", StageKind.TRANSFER)
    bad = FlowArc("a90", LIBRARIAN_TRANSFER, ghost, index=90)
    model = replace(book_model, flows=book_model.flows + (bad,))
    assert _codes(model) == [RuleCodes.DANGLING_ENDPOINT]


def test_unknown_thing_kind_is_dangling(book_model):
    model = _with_machine(book_model, "Shelf.Book", handles="scroll")
    # the shelf-to-librarian flow now joins a scroll machine to a book machine
    assert _codes(model) == [RuleCodes.DANGLING_ENDPOINT, RuleCodes.KIND_MISMATCH]


def test_receive_conflict(book_model):
    model = _with_machine(
        book_model,
        "Borrower.Book",
        stages=(StageKind.ACCEPT, StageKind.RECEIVE, StageKind.TRANSFER),
    )
    # the injected Accept stage has no arc
    assert _codes(model) == [RuleCodes.RECEIVE_CONFLICT, RuleCodes.INERT_STAGE]


def test_sphere_cycle(book_model):
    loop = (
        Sphere(("X",), parent=("Y",), index=90),
        Sphere(("Y",), parent=("X",), index=91),
    )
    model = replace(book_model, spheres=book_model.spheres + loop)
    assert _codes(model) == [RuleCodes.SPHERE_CYCLE]


def test_trigger_target_must_be_create_or_release(book_model):
    target = Endpoint(("Borrower",), "Book", StageKind.RECEIVE)
    bad = TriggerArc("a90", SHELF_RELEASE, target, index=90)
    model = replace(book_model, triggers=(bad,))
    assert _codes(model) == [RuleCodes.TRIGGER_TARGET]


def test_junction_arity(book_model):
    output = TriggerArc("a90", JunctionRef("J"), SHELF_RELEASE, index=90)
    single = TriggerArc("a91", LIBRARIAN_TRANSFER, JunctionRef("J"), index=91)
    model = replace(
        book_model,
        triggers=(output, single),
        junctions=(Junction("J", ("a91",), "a90", index=89),),
    )
    diagnostics = validate(model)
    assert [(d.code, d.subject) for d in diagnostics] == [(RuleCodes.JUNCTION_ARITY, "J")]


def test_junction_with_unknown_arc(book_model):
    model = replace(book_model, junctions=(Junction("J", ("a98", "a99"), "a97", index=89),))
    assert _codes(model) == [RuleCodes.DANGLING_ENDPOINT] * 3


def test_guard_on_unknown_attribute(book_model):
    bad = TriggerArc(
        "a90",
        LIBRARIAN_TRANSFER,
        SHELF_RELEASE,
        guard=AttributeEquals("colour", "red"),
        index=90,
    )
    model = replace(book_model, triggers=(bad,))
    assert _codes(model) == [RuleCodes.GUARD_ATTRIBUTE]


def test_kind_mismatch(book_model):
    model = _with_machine(book_model, "Borrower.Book", handles="magazine")
    model = replace(model, things=model.things + (ThingKind("magazine", index=90),))
    diagnostics = validate(model)
    assert [(d.code, d.subject) for d in diagnostics] == [(RuleCodes.KIND_MISMATCH, "a7")]


def test_inert_stage(book_model):
    extra = Machine(("Shelf",), "Extra", (StageKind.CREATE,), "book", index=90)
    model = replace(book_model, machines=book_model.machines + (extra,))
    diagnostics = validate(model)
    assert [(d.code, d.subject) for d in diagnostics] == [(RuleCodes.INERT_STAGE, "Shelf.Extra.Create")]
    assert not has_errors(diagnostics)


def test_unread_storage(book_model):
    model = replace(book_model, flows=book_model.flows[1:])
    diagnostics = validate(model)
    by_code = {(d.code, d.subject) for d in diagnostics}
    assert (RuleCodes.UNREAD_STORAGE, "Shelf.Book.Storage") in by_code
    assert (RuleCodes.INERT_STAGE, "Shelf.Book.Release") in by_code


def test_unreachable_stage(builder):
    builder.add_machine((), "M", "item", ["Process", "Release"])
    builder.add_flow_arc("M.Process", "M.Release")
    diagnostics = validate(builder.build())
    assert {d.subject for d in diagnostics} == {"M.Process", "M.Release"}
    assert all(d.code == RuleCodes.INERT_STAGE for d in diagnostics)
    assert all("unreachable" in d.message for d in diagnostics)


def test_errors_sort_before_warnings(book_model):
    extra = Machine(("Shelf",), "Extra", (StageKind.CREATE,), "book", index=90)
    model = _with_machine(book_model, "Borrower.Book", handles="scroll")
    model = replace(model, machines=model.machines + (extra,))
    diagnostics = validate(model)
    severities = [d.severity for d in diagnostics]
    assert severities == sorted(severities, key=Severity.RANK.get)
    assert has_errors(diagnostics)
    counts = count_by_severity(diagnostics)
    assert counts[Severity.WARNING] == 1
    assert counts[Severity.ERROR] >= 1


@pytest.mark.parametrize("stem", ["speaker", "joboffer", "phosphorus", "callcenter"])
def test_corpus_models_are_clean(stem):
    assert validate(load_corpus_model(stem)) == []


def test_sort_is_stable_by_code_then_index(book_model):
    diagnostics = validate(_with_machine(book_model, "Shelf.Book", handles="scroll"))
    assert sort_diagnostics(reversed(diagnostics)) == diagnostics
