from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gstory.core import GraphStory, GridBox, MissingPosition
from gstory.generate import gen_nested_triangles, gen_path, gen_tree
from gstory.io import (
    ParseError,
    dumps_layout,
    dumps_story,
    load_drawing,
    loads_layout,
    loads_story,
    write_layout,
    write_story,
)
from gstory.path_layout import layout_path
from gstory.tree_layout import layout_tree


def test_story_document_shape():
    doc = json.loads(dumps_story(gen_path(3, 2)))
    assert doc == {
        "kind": "path",
        "window": 2,
        "vertices": [{"id": "v1", "tau": 1}, {"id": "v2", "tau": 2}, {"id": "v3", "tau": 3}],
        "edges": [["v1", "v2"], ["v2", "v3"]],
    }
    assert dumps_story(gen_path(3, 2)).endswith("}\n")


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 80), st.integers(1, 9), st.integers(0, 500), st.sampled_from(["path", "tree", "nested"]))
def test_story_and_layout_round_trip(n, w, seed, family):
    if family == "path":
        s = gen_path(n, w, "shuffled", seed)
        d = layout_path(s)
    elif family == "tree":
        s = gen_tree(n, w, seed)
        d = layout_tree(s)
    else:
        s = gen_nested_triangles(3 * (n % 20 + 2))
        d = None
    text = dumps_story(s)
    back = loads_story(text)
    assert back == s and dumps_story(back) == text
    if d is not None:
        lay = loads_layout(dumps_layout(d))
        assert lay.grid == d.grid
        again = lay.drawing(back)
        assert again == d and dumps_layout(again) == dumps_layout(d)


def test_tau_is_taken_from_the_file():
    text = json.dumps({
        "kind": "general", "window": 2,
        "vertices": [{"id": "b", "tau": 2}, {"id": "a", "tau": 1}], "edges": [["a", "b"]],
    })
    s = loads_story(text)
    assert s.ids == ("a", "b")
    assert json.loads(dumps_story(s))["vertices"][0] == {"id": "a", "tau": 1}


@pytest.mark.parametrize(
    "text",
    [
        "{",
        "[]",
        '{"kind": "path", "window": 2, "vertices": []}',
        '{"kind": "weird", "window": 2, "vertices": [], "edges": []}',
        '{"kind": "general", "window": "2", "vertices": [], "edges": []}',
        '{"kind": "general", "window": 2, "vertices": [{"id": "a"}], "edges": []}',
        '{"kind": "general", "window": 2, "vertices": [{"id": "a", "tau": 1.0}], "edges": []}',
        '{"kind": "general", "window": 2, "vertices": [{"id": "a", "tau": 1}], "edges": [["a"]]}',
    ],
)
def test_bad_story_files(text):
    with pytest.raises(ParseError):
        loads_story(text)


@pytest.mark.parametrize(
    "text",
    [
        '{"positions": {"a": [1.5, 2]}}',
        '{"positions": {"a": [1]}}',
        '{"positions": {"a": [true, 2]}}',
        '{"grid": {"xmin": 0}}',
        '{"frames": {"x": {}}}',
    ],
)
def test_bad_layout_files(text):
    with pytest.raises(ParseError):
        loads_layout(text)


def test_external_frames_and_missing_positions(tmp_path):
    s = GraphStory.build(["a", "b"], [1, 2], [("a", "b")], 2)
    write_story(s, tmp_path / "s.json")
    (tmp_path / "l.json").write_text('{"frames": {"1": {"a": [0, 0]}, "2": {"a": [0, 0], "b": [1, 1]}}}')
    d, lay = load_drawing(tmp_path / "s.json", tmp_path / "l.json")
    assert d.positions == {"a": (0, 0), "b": (1, 1)} and lay.frames[2]["b"] == (1, 1)
    (tmp_path / "m.json").write_text('{"positions": {"a": [0, 0]}}')
    with pytest.raises(MissingPosition):
        load_drawing(tmp_path / "s.json", tmp_path / "m.json")


def test_layout_file_keeps_the_grid(tmp_path):
    d = layout_tree(gen_tree(10, 2, 1))
    write_layout(d, tmp_path / "l.json")
    doc = json.loads((tmp_path / "l.json").read_text())
    assert doc["grid"] == {"xmin": -8, "xmax": 8, "ymin": -8, "ymax": 8}
    assert loads_layout(json.dumps(doc)).grid == GridBox(-8, 8, -8, 8)
