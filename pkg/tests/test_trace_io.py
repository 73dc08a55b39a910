"""
Tests for JSON Lines trace files.
"""

import json

import pytest

from conftest import load_corpus_model, load_corpus_scenario
from core.constants import TRACE_FIELDS
from core.exceptions import ValidationError
from simulation.engine import run
from simulation.events import extract_events
from simulation.trace_io import process_to_json, read_trace, trace_from_jsonl, trace_to_jsonl, write_trace


def test_lines_are_compact_and_ordered(book_model):
    text = trace_to_jsonl(run(book_model, load_corpus_scenario("book")))
    first = text.splitlines()[0]
    assert " " not in first
    assert list(json.loads(first)) == list(TRACE_FIELDS)
    assert text.endswith("}\n")


def test_truncated_trace_reads_back():
    trace = run(load_corpus_model("phosphorus"), load_corpus_scenario("phosphorus"), max_ticks=4)
    back = trace_from_jsonl(trace_to_jsonl(trace))
    assert back.truncated
    assert back.final_tick == 4
    assert back.records == trace.records


def test_file_round_trip(tmp_path, speaker_model):
    trace = run(speaker_model, load_corpus_scenario("speaker"))
    path = write_trace(trace, tmp_path / "speaker.jsonl")
    assert read_trace(path).records == trace.records


@pytest.mark.parametrize(
    "text",
    [
        "{not json}\n",
        "[1, 2]\n",
        '{"seq":0,"tick":0,"machine":"M","stage":"Create"}\n',
        '{"seq":0,"tick":0,"machine":"M","stage":"Create","action":"created","colour":"red"}\n',
    ],
)
def test_malformed_lines(text):
    with pytest.raises(ValidationError):
        trace_from_jsonl(text)


def test_blank_lines_are_skipped():
    text = '\n{"seq":0,"tick":3,"machine":"M","stage":"Create","action":"created"}\n\n'
    trace = trace_from_jsonl(text)
    assert len(trace) == 1
    assert trace.records[0].token is None
    assert trace.final_tick == 3


def test_process_json(joboffer_model):
    process = extract_events(run(joboffer_model, load_corpus_scenario("joboffer")), joboffer_model)
    data = json.loads(process_to_json(process))
    assert len(data["events"]) == 4
    last = data["events"][3]
    assert (last["id"], last["machine"], last["start"], last["end"]) == (3, "JobOffer.SendOffers", 6, 9)
    assert last["records"] == sorted(last["records"])
