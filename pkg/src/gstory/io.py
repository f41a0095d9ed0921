"""JSON story and layout files.

Output is deterministic: fixed key order, vertices in appearance order, one
trailing newline.  Parsing is strict about types so that a round trip is an
identity on the data model.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

from .core import DrawingStory, GraphStory, GraphStoryError, GridBox, Point, StoryKind, VertexId


class ParseError(GraphStoryError):
    pass


def _dumps(doc: Any) -> str:
    return json.dumps(doc, ensure_ascii=False, separators=(",", ":")) + "\n"


def _loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from None


def _is_int(v: Any) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _require(doc: Mapping, key: str, kind: type | tuple[type, ...]) -> Any:
    if not isinstance(doc, Mapping) or key not in doc:
        raise ParseError(f"missing key {key!r}")
    val = doc[key]
    if not isinstance(val, kind) or isinstance(val, bool):
        raise ParseError(f"key {key!r} has the wrong type")
    return val


# ---------------------------------------------------------------------------
# stories


def story_to_doc(story: GraphStory) -> dict[str, Any]:
    ids = story.ids
    return {
        "kind": story.kind.value,
        "window": story.window,
        "vertices": [{"id": v, "tau": k + 1} for k, v in enumerate(ids)],
        "edges": [[ids[u], ids[v]] for u, v in story.edges.tolist()],
    }


def dumps_story(story: GraphStory) -> str:
    return _dumps(story_to_doc(story))


def story_from_doc(doc: Any) -> GraphStory:
    if not isinstance(doc, Mapping):
        raise ParseError("story must be a JSON object")
    kind = _require(doc, "kind", str)
    if kind not in {k.value for k in StoryKind}:
        raise ParseError(f"unknown story kind {kind!r}")
    window = _require(doc, "window", int)
    vertices = _require(doc, "vertices", list)
    edges = _require(doc, "edges", list)
    ids, taus = [], []
    for item in vertices:
        ids.append(_require(item, "id", str))
        taus.append(_require(item, "tau", int))
    pairs = []
    for e in edges:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(v, str) for v in e)):
            raise ParseError(f"edge {e!r} is not a pair of ids")
        pairs.append((e[0], e[1]))
    return GraphStory.build(ids, taus, pairs, window, kind)


def loads_story(text: str) -> GraphStory:
    return story_from_doc(_loads(text))


def write_story(story: GraphStory, path: str | Path) -> None:
    Path(path).write_text(dumps_story(story), encoding="utf-8")


def read_story(path: str | Path) -> GraphStory:
    return loads_story(Path(path).read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# layouts


@dataclass(frozen=True)
class Layout:
    """Parsed layout file.

    ``frames`` holds per-frame positions of externally produced drawing
    stories (frame index to positions); our own layouts never set it.
    """

    positions: dict[VertexId, Point]
    grid: GridBox | None
    frames: dict[int, dict[VertexId, Point]] | None = None

    def drawing(self, story: GraphStory) -> DrawingStory:
        if self.positions or not self.frames:
            return DrawingStory.from_positions(story, self.positions, self.grid)
        # external story with per-frame data only: take first positions
        first: dict[VertexId, Point] = {}
        for t in sorted(self.frames):
            for v, p in self.frames[t].items():
                first.setdefault(v, p)
        return DrawingStory.from_positions(story, first, self.grid)


def layout_to_doc(drawing: DrawingStory) -> dict[str, Any]:
    ids = drawing.story.ids
    doc: dict[str, Any] = {"positions": {v: [x, y] for v, (x, y) in zip(ids, drawing.xy.tolist())}}
    grid = drawing.grid if drawing.grid is not None else drawing.bounding_box()
    doc["grid"] = grid.to_json()
    return doc


def dumps_layout(drawing: DrawingStory) -> str:
    return _dumps(layout_to_doc(drawing))


def _point(p: Any) -> Point:
    if not (isinstance(p, list) and len(p) == 2 and all(_is_int(c) for c in p)):
        raise ParseError(f"position {p!r} is not a pair of integers")
    return p[0], p[1]


def layout_from_doc(doc: Any) -> Layout:
    if not isinstance(doc, Mapping):
        raise ParseError("layout must be a JSON object")
    raw = doc.get("positions", {})
    if not isinstance(raw, Mapping):
        raise ParseError("positions must be an object")
    positions = {str(v): _point(p) for v, p in raw.items()}
    grid = None
    if "grid" in doc:
        g = doc["grid"]
        grid = GridBox(*(_require(g, k, int) for k in ("xmin", "xmax", "ymin", "ymax")))
    frames = None
    if "frames" in doc:
        fr = doc["frames"]
        if not isinstance(fr, Mapping):
            raise ParseError("frames must be an object")
        try:
            frames = {int(t): {str(v): _point(p) for v, p in pos.items()} for t, pos in fr.items()}
        except (ValueError, AttributeError):
            raise ParseError("frames must map frame indices to position objects") from None
    if "positions" not in doc and frames is None:
        raise ParseError("layout has neither positions nor frames")
    return Layout(positions, grid, frames)


def loads_layout(text: str) -> Layout:
    return layout_from_doc(_loads(text))


def write_layout(drawing: DrawingStory, path: str | Path) -> None:
    Path(path).write_text(dumps_layout(drawing), encoding="utf-8")


def read_layout(path: str | Path) -> Layout:
    return loads_layout(Path(path).read_text(encoding="utf-8"))


def load_drawing(story_path: str | Path, layout_path: str | Path) -> tuple[DrawingStory, Layout]:
    story = read_story(story_path)
    layout = read_layout(layout_path)
    return layout.drawing(story), layout

