"""
Tests for DOT rendering.
"""

import pytest

from conftest import load_corpus_model, load_corpus_scenario
from core.exceptions import RenderError
from model.builder import ModelBuilder
from render.dot import RenderOptions, to_dot, to_trace_snapshot
from simulation.engine import run

EMPTY_DOT = """\
digraph flowkit {
  rankdir=LR;
  graph [fontname="Helvetica"];
  node [fontname="Helvetica"];
  edge [fontname="Helvetica"];
  subgraph cluster_root {
    label="";
  }
}
"""


def _edges(dot: str):
    return [line.strip() for line in dot.splitlines() if " -> " in line]


def test_empty_model():
    assert to_dot(ModelBuilder().build()) == EMPTY_DOT


def test_tb_layout():
    assert "  rankdir=TB;\n" in to_dot(ModelBuilder().build(), RenderOptions(rankdir="TB"))


def test_unknown_rankdir():
    with pytest.raises(RenderError):
        RenderOptions(rankdir="RL")


@pytest.mark.parametrize("stem", ["book", "speaker", "joboffer", "phosphorus", "callcenter"])
def test_edge_styles_match_arc_kinds(stem):
    model = load_corpus_model(stem)
    edges = _edges(to_dot(model))
    assert len(edges) == len(model.arcs)
    assert sum("style=dashed" in edge for edge in edges) == len(model.triggers)
    assert sum("style=solid" in edge for edge in edges) == len(model.flows)
    assert [edge.rsplit("// ", 1)[1] for edge in edges] == [arc.id for arc in model.arcs]


def test_storage_is_a_cylinder(book_model):
    dot = to_dot(book_model)
    assert dot.count("shape=cylinder") == 1
    assert '"Shelf.Book.Storage" [shape=cylinder, label="Storage"];' in dot


def test_call_center_junction_and_guards(callcenter_model):
    dot = to_dot(callcenter_model)
    assert dot.count('"junction:StartHiring" [shape=rect') == 1
    assert '"junction:StartHiring" -> "Recruiter.Hiring.Create" [style=dashed]; // a1' in dot
    assert 'label="response = accept"' in dot
    assert 'label="tick <= response_deadline"' in dot
    assert 'subgraph "cluster_sphere:Call-Center-Manager.Orientation" {' in dot


def test_spheres_can_be_hidden(callcenter_model):
    dot = to_dot(callcenter_model, RenderOptions(show_spheres=False))
    assert "cluster_sphere:" not in dot
    assert dot.count("cluster_machine:") == len(callcenter_model.machines)


def test_snapshot_marks_active_stages(book_model):
    trace = run(book_model, load_corpus_scenario("book"))
    dot = to_trace_snapshot(book_model, trace, 0)
    assert '"Shelf.Book.Storage" [shape=cylinder, label="Storage", peripheries=2];' in dot
    assert dot.count("peripheries=2") == 1
    later = to_trace_snapshot(book_model, trace, 4)
    assert '"Librarian.Book.Receive" [shape=box, label="Receive", peripheries=2];' in later


@pytest.mark.parametrize("tick", [-1, 10])
def test_snapshot_outside_trace(book_model, tick):
    trace = run(book_model, load_corpus_scenario("book"))
    with pytest.raises(RenderError):
        to_trace_snapshot(book_model, trace, tick)


def test_highlight_needs_a_trace(book_model):
    with pytest.raises(RenderError):
        to_dot(book_model, RenderOptions(highlight_tick=0))


def test_rendering_is_deterministic():
    model = load_corpus_model("callcenter")
    assert to_dot(model) == to_dot(load_corpus_model("callcenter"))
