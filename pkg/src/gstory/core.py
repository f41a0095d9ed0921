"""Domain model for graph stories, buckets, frames and drawing stories.

A graph story is a graph whose vertices appear one per time step (the
appearance index ``tau``) and stay alive for ``window`` consecutive steps.
Internally every vertex is addressed by its 0-based appearance index
``k = tau - 1``; ``GraphStory.ids[k]`` maps back to the external id.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Iterator, Mapping, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

VertexId = str
Point = tuple[int, int]


class GraphStoryError(ValueError):
    """Base class for every error raised by this package."""


class InvalidStory(GraphStoryError):
    pass


class NotAPath(InvalidStory):
    pass


class NotATree(InvalidStory):
    pass


class MissingPosition(GraphStoryError):
    pass


class StoryKind(str, enum.Enum):
    PATH = "path"
    TREE = "tree"
    GENERAL = "general"


class ViolationKind(str, enum.Enum):
    CROSSING = "Crossing"
    OVERLAP = "Overlap"
    OUT_OF_BOUNDS = "OutOfBounds"
    MOVED_VERTEX = "MovedVertex"
    WEDGE_INTRUSION = "WedgeIntrusion"
    ORDER_VIOLATION = "OrderViolation"


@dataclass(frozen=True)
class Violation:
    """A broken invariant together with enough witnesses to reproduce it."""

    kind: ViolationKind
    frame: int | None = None
    witnesses: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return {"kind": self.kind.value, "frame": self.frame, "witnesses": self.witnesses}


def _as_edge_array(edges: Any) -> np.ndarray:
    arr = np.asarray(edges, dtype=np.int64)
    if arr.size == 0:
        return np.zeros((0, 2), dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InvalidStory("edges must be pairs of vertices")
    return arr


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


def argsort_by(*keys: np.ndarray) -> np.ndarray:
    """Stable lexicographic argsort, the first key most significant.

    Packs the keys and the element index into one int64 when they fit, which
    is several times faster than a stable sort or ``np.lexsort``.
    """
    m = len(keys[0])
    if m == 0:
        return np.zeros(0, dtype=np.int64)
    packed = np.zeros(m, dtype=np.int64)
    span = 1
    for k in keys:
        k = np.asarray(k, dtype=np.int64)
        lo = int(k.min())
        width = int(k.max()) - lo + 1
        span *= width
        if span * m >= 1 << 62:
            return np.lexsort(tuple(reversed(keys)))
        packed = packed * width + (k - lo)
    return np.argsort(packed * m + np.arange(m))


def adjacency(n: int, edges: np.ndarray) -> csr_matrix:
    """Symmetric sparse adjacency matrix of an edge array over ``n`` vertices.

    Built directly in CSR form with float data, which the graph routines use
    without converting.
    """
    src = np.concatenate([edges[:, 0], edges[:, 1]])
    dst = np.concatenate([edges[:, 1], edges[:, 0]])
    order = argsort_by(src)
    indptr = np.zeros(n + 1, dtype=np.int32)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    return csr_matrix((np.ones(len(order)), dst[order].astype(np.int32), indptr), shape=(n, n))


def component_labels(n: int, edges: np.ndarray) -> tuple[int, np.ndarray]:
    """Connected components; strong components of the symmetric matrix are the same thing, found faster."""
    return connected_components(adjacency(n, edges), directed=True, connection="strong")


def is_spanning_tree(n: int, edges: np.ndarray) -> bool:
    if len(edges) != n - 1:
        return False
    if n <= 1:
        return True
    count, _ = component_labels(n, edges)
    return count == 1


def is_spanning_path(n: int, edges: np.ndarray) -> bool:
    if not is_spanning_tree(n, edges):
        return False
    if n <= 2:
        return True
    degree = np.bincount(edges.ravel(), minlength=n)
    return int(degree.max()) <= 2


@dataclass(frozen=True, eq=False)
class GraphStory:
    """A graph, an appearance labeling and a window size.

    ``ids`` lists the vertices in appearance order, so ``tau(ids[k]) == k + 1``.
    ``edges`` is an ``(m, 2)`` array of appearance indices.  Construct stories
    from external data with :meth:`build`.
    """

    ids: tuple[VertexId, ...]
    edges: np.ndarray
    window: int
    kind: StoryKind = StoryKind.GENERAL

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", StoryKind(self.kind))
        object.__setattr__(self, "edges", _frozen(_as_edge_array(self.edges)))
        if not isinstance(self.window, (int, np.integer)) or self.window < 1:
            raise InvalidStory(f"window must be a positive integer, got {self.window!r}")
        object.__setattr__(self, "window", int(self.window))
        self._validate()

    def _validate(self) -> None:
        n = len(self.ids)
        if len(set(self.ids)) != n:
            raise InvalidStory("vertex ids must be unique")
        e = self.edges
        if len(e):
            if e.min() < 0 or e.max() >= n:
                raise InvalidStory("edge endpoint outside the vertex set")
            if np.any(e[:, 0] == e[:, 1]):
                raise InvalidStory("self-loops are not allowed")
        if self.kind is StoryKind.PATH:
            if not is_spanning_path(n, e):
                raise NotAPath("edges do not form a simple path over all vertices")
        elif self.kind is StoryKind.TREE:
            if not is_spanning_tree(n, e):
                raise NotATree("edges do not form a tree over all vertices")
        elif len(e):
            # n - 1 edges spanning n vertices cannot repeat, so only general graphs need this
            lo = np.minimum(e[:, 0], e[:, 1])
            hi = np.maximum(e[:, 0], e[:, 1])
            if len(np.unique(lo * n + hi)) != len(e):
                raise InvalidStory("duplicate edges are not allowed")

    @classmethod
    def build(
        cls,
        vertices: Sequence[VertexId],
        tau: Mapping[VertexId, int] | Sequence[int],
        edges: Iterable[tuple[VertexId, VertexId]],
        window: int,
        kind: StoryKind | str = StoryKind.GENERAL,
    ) -> GraphStory:
        """Build a story from external ids, an explicit labeling and id pairs."""
        vertices = [str(v) for v in vertices]
        n = len(vertices)
        if isinstance(tau, Mapping):
            try:
                labels = [tau[v] for v in vertices]
            except KeyError as exc:
                raise InvalidStory(f"vertex {exc.args[0]!r} has no tau") from None
        else:
            labels = list(tau)
            if len(labels) != n:
                raise InvalidStory("tau must label every vertex")
        if any(not isinstance(t, (int, np.integer)) or isinstance(t, bool) for t in labels):
            raise InvalidStory("tau values must be integers")
        if sorted(labels) != list(range(1, n + 1)):
            raise InvalidStory("tau is not a bijection onto 1..n")
        ordered: list[VertexId] = [""] * n
        for v, t in zip(vertices, labels):
            ordered[t - 1] = v
        index = {v: k for k, v in enumerate(ordered)}
        pairs = []
        for e in edges:
            e = tuple(e)
            if len(e) != 2:
                raise InvalidStory(f"edge {e!r} is not a pair")
            u, v = e
            if u not in index or v not in index:
                raise InvalidStory(f"edge {e!r} references an unknown vertex")
            pairs.append((index[u], index[v]))
        return cls(tuple(ordered), np.array(pairs, dtype=np.int64).reshape(-1, 2), window, kind)

    @property
    def n(self) -> int:
        return len(self.ids)

    @property
    def vertices(self) -> tuple[VertexId, ...]:
        return self.ids

    @cached_property
    def index(self) -> dict[VertexId, int]:
        return {v: k for k, v in enumerate(self.ids)}

    @cached_property
    def tau(self) -> dict[VertexId, int]:
        return {v: k + 1 for k, v in enumerate(self.ids)}

    @cached_property
    def edge_list(self) -> list[tuple[VertexId, VertexId]]:
        ids = self.ids
        return [(ids[u], ids[v]) for u, v in self.edges.tolist()]

    @cached_property
    def bucket_index(self) -> np.ndarray:
        """0-based bucket of every vertex, in appearance order."""
        return _frozen(np.arange(self.n, dtype=np.int64) // self.window)

    @property
    def frame_count(self) -> int:
        return self.n + self.window - 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GraphStory):
            return NotImplemented
        return (
            self.ids == other.ids
            and self.window == other.window
            and self.kind is other.kind
            and np.array_equal(self.edges, other.edges)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"GraphStory(kind={self.kind.value}, n={self.n}, m={len(self.edges)}, W={self.window})"


@dataclass(frozen=True)
class Frame:
    t: int
    live_vertices: tuple[VertexId, ...]
    live_edges: tuple[tuple[VertexId, VertexId], ...]


def live_range(t: int, n: int, window: int) -> range:
    """Appearance indices alive at time ``t`` (1-based): ``t - W < tau <= t``."""
    return range(max(t - window, 0), min(t, n))


def frames(story: GraphStory) -> Iterator[Frame]:
    """Yield the ``n + W - 1`` frames of a story in time order.

    Edges are attributed to the frame range in which both endpoints live, so
    the whole sequence is produced in ``O(n W)`` without re-scanning the
    edge list per frame.
    """
    n, w = story.n, story.window
    ids = story.ids
    lows: list[int] = []
    # an edge lives from the step its later endpoint appears until the
    # earlier endpoint expires
    arrivals: list[list[int]] = [[] for _ in range(n + 1)]
    for i, (u, v) in enumerate(story.edges.tolist()):
        lo, hi = (u, v) if u < v else (v, u)
        lows.append(lo)
        if hi - lo < w:
            arrivals[hi + 1].append(i)
    edge_list = story.edge_list
    live: list[int] = []
    for t in range(1, n + w):
        window = live_range(t, n, w)
        live = [i for i in live if lows[i] >= window.start]
        if t <= n:
            live.extend(arrivals[t])
        yield Frame(
            t=t,
            live_vertices=tuple(ids[k] for k in window),
            live_edges=tuple(edge_list[i] for i in sorted(live)),
        )


@dataclass(frozen=True)
class BucketPartition:
    """Vertices grouped into consecutive runs of ``W`` appearance indices."""

    bucket_of: dict[VertexId, int]
    h: int
    window: int

    def members(self, i: int) -> list[VertexId]:
        return [v for v, b in self.bucket_of.items() if b == i]


def buckets(story: GraphStory) -> BucketPartition:
    w = story.window
    return BucketPartition(
        bucket_of={v: k // w + 1 for k, v in enumerate(story.ids)},
        h=-(-story.n // w),
        window=w,
    )


def window_supergraph_index(t: int, window: int) -> int:
    """Bucket ``i`` such that frame ``t`` lives inside ``B_{i-1} | B_i``."""
    if t < 1:
        raise ValueError("time index starts at 1")
    return -(-t // window)


@dataclass(frozen=True)
class GridBox:
    xmin: int
    xmax: int
    ymin: int
    ymax: int

    @property
    def width(self) -> int:
        return self.xmax - self.xmin + 1

    @property
    def height(self) -> int:
        return self.ymax - self.ymin + 1

    def contains(self, p: Point) -> bool:
        return self.xmin <= p[0] <= self.xmax and self.ymin <= p[1] <= self.ymax

    def to_json(self) -> dict[str, int]:
        return {"xmin": self.xmin, "xmax": self.xmax, "ymin": self.ymin, "ymax": self.ymax}

    @classmethod
    def around(cls, xy: np.ndarray) -> GridBox:
        if len(xy) == 0:
            return cls(0, 0, 0, 0)
        lo, hi = xy.min(axis=0), xy.max(axis=0)
        return cls(int(lo[0]), int(hi[0]), int(lo[1]), int(hi[1]))


@dataclass(frozen=True, eq=False)
class DrawingStory:
    """One fixed integer point per vertex, reused in every frame it lives in.

    ``xy[k]`` is the position of ``story.ids[k]``.  ``grid`` is the grid the
    producing construction guarantees, when there is one.
    """

    story: GraphStory
    xy: np.ndarray
    grid: GridBox | None = None

    def __post_init__(self) -> None:
        xy = np.asarray(self.xy)
        if xy.shape != (self.story.n, 2):
            raise MissingPosition(f"expected {self.story.n} positions, got shape {xy.shape}")
        if xy.size and not np.issubdtype(xy.dtype, np.integer):
            raise InvalidStory("positions must be integer points")
        object.__setattr__(self, "xy", _frozen(xy.astype(np.int64, copy=False)))

    @classmethod
    def from_positions(
        cls, story: GraphStory, positions: Mapping[VertexId, Sequence[int]], grid: GridBox | None = None
    ) -> DrawingStory:
        missing = [v for v in story.ids if v not in positions]
        if missing:
            raise MissingPosition(f"no position for {missing[:5]}")
        xy = np.array([tuple(positions[v]) for v in story.ids], dtype=np.int64).reshape(-1, 2)
        return cls(story, xy, grid)

    def position(self, v: VertexId) -> Point:
        x, y = self.xy[self.story.index[v]]
        return int(x), int(y)

    @cached_property
    def positions(self) -> dict[VertexId, Point]:
        return {v: (x, y) for v, (x, y) in zip(self.story.ids, self.xy.tolist())}

    def bounding_box(self) -> GridBox:
        return GridBox.around(self.xy)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DrawingStory):
            return NotImplemented
        return self.story == other.story and np.array_equal(self.xy, other.xy) and self.grid == other.grid

    __hash__ = None  # type: ignore[assignment]
