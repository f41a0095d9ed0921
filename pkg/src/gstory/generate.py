"""Seeded story generators and the concentric nested-triangles drawing.

Every generator is a pure function of its arguments.  Vertex ids are
``v1, v2, ...`` in construction order (path order for paths, appearance order
for trees and nested triangles).
"""

from __future__ import annotations

import enum
import operator
from functools import lru_cache

import numpy as np

from .core import DrawingStory, GraphStory, GraphStoryError, GridBox, StoryKind, argsort_by
from .forest_drawer import OrderedForest

NESTED_WINDOW = 9


class BadSize(GraphStoryError):
    pass


class TauMode(str, enum.Enum):
    IDENTITY = "identity"
    SHUFFLED = "shuffled"
    # appearance order close to path order: each vertex jitters by < 2W places
    LOCAL = "local"


class TreeShape(str, enum.Enum):
    UNIFORM_ATTACH = "uniformAttach"
    CATERPILLAR = "caterpillar"
    STAR = "star"


@lru_cache(maxsize=64)
def _names(n: int) -> tuple[str, ...]:
    return tuple(f"v{i}" for i in range(1, n + 1))


def gen_path(n: int, window: int, tau: TauMode | str = TauMode.IDENTITY, seed: int = 0) -> GraphStory:
    """Path ``v1 - v2 - ... - vn`` with appearance times per ``tau``."""
    if n < 1:
        raise BadSize("a path needs at least one vertex")
    mode = TauMode(tau)
    names = _names(n)
    if mode is TauMode.IDENTITY:
        slot = np.arange(n, dtype=np.int64)
    elif mode is TauMode.SHUFFLED:
        slot = np.random.default_rng(seed).permutation(n).astype(np.int64)
    else:
        jitter = np.random.default_rng(seed).integers(0, 2 * window, size=n)
        slot = np.empty(n, dtype=np.int64)
        slot[argsort_by(np.arange(n) + jitter)] = np.arange(n)
    # slot[i] is the appearance index of path vertex i
    at = np.empty(n, dtype=np.int64)
    at[slot] = np.arange(n)
    ids = operator.itemgetter(*at.tolist())(names) if n > 1 else names
    edges = np.stack([slot[:-1], slot[1:]], axis=1)
    return GraphStory(ids, edges, window, StoryKind.PATH)


def tree_parents(n: int, seed: int, shape: TreeShape | str) -> np.ndarray:
    """Parent appearance index of vertices ``1..n-1`` (vertex 0 is the root)."""
    shape = TreeShape(shape)
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    rng = np.random.default_rng(seed)
    if shape is TreeShape.STAR:
        return np.zeros(n - 1, dtype=np.int64)
    if shape is TreeShape.UNIFORM_ATTACH:
        return rng.integers(0, np.arange(1, n)).astype(np.int64)
    # caterpillar: spine vertices hang off the previous spine vertex, legs off a
    # random earlier spine vertex
    spine = rng.random(n) < 0.5
    spine[0] = True
    spine_idx = np.flatnonzero(spine)
    before = np.cumsum(spine) - spine  # spine vertices strictly before k
    pick = (rng.random(n) * before).astype(np.int64)
    last = spine_idx[before - 1 + (before == 0)]
    parent = np.where(spine, last, spine_idx[np.minimum(pick, np.maximum(before - 1, 0))])
    return parent[1:].astype(np.int64)


def gen_tree(n: int, window: int, seed: int = 0, shape: TreeShape | str = TreeShape.UNIFORM_ATTACH) -> GraphStory:
    """Random tree whose appearance order is its construction order."""
    if n < 1:
        raise BadSize("a tree needs at least one vertex")
    parent = tree_parents(n, seed, shape)
    edges = np.stack([parent, np.arange(1, n, dtype=np.int64)], axis=1)
    return GraphStory(_names(n), edges, window, StoryKind.TREE)


def gen_nested_triangles(n: int, window: int = NESTED_WINDOW) -> GraphStory:
    """Triangles ``(v_{3k-2}, v_{3k-1}, v_{3k})`` joined by ``(v_i, v_{i+3})``; ``tau(v_i) = i``.

    A window other than 9 is accepted for exploration only.
    """
    if n < 6 or n % 3:
        raise BadSize(f"nested triangles need n >= 6 with n divisible by 3, got {n}")
    first = np.arange(0, n, 3, dtype=np.int64)
    tri = np.concatenate(
        [np.stack([first, first + 1], 1), np.stack([first + 1, first + 2], 1), np.stack([first, first + 2], 1)]
    )
    tri = tri[np.argsort(tri[:, 0] // 3, kind="stable")]
    conn = np.stack([np.arange(n - 3), np.arange(3, n)], axis=1)
    return GraphStory(_names(n), np.concatenate([tri, conn]), window, StoryKind.GENERAL)


def concentric_layout(story: GraphStory) -> DrawingStory:
    """Triangle ``k`` at scale ``n/3 - k + 1`` around the origin, the innermost smallest.

    Corner ``j`` of every triangle sits on the same ray from the origin, so
    connectors are radial and never cross.
    """
    n = story.n
    if n < 6 or n % 3:
        raise BadSize("not a nested-triangles story")
    k = np.arange(n) // 3
    s = (n // 3 - k).astype(np.int64)
    corner = np.array([[0, 1], [-1, -1], [1, -1]], dtype=np.int64)[np.arange(n) % 3]
    xy = corner * s[:, None]
    return DrawingStory(story, xy, GridBox.around(xy))


def random_forest(m: int, rng: np.random.Generator, max_roots: int | None = None) -> OrderedForest:
    """Random ordered forest on vertices ``0..m-1`` (pre-order numbering)."""
    if m < 1:
        raise BadSize("a forest needs at least one vertex")
    # vertex k > 0 is a new root or a child of an earlier vertex on the
    # rightmost path, which keeps 0..m-1 a pre-order
    path: list[int] = []
    roots: list[int] = []
    children: dict[int, list[int]] = {}
    for v in range(m):
        depth = int(rng.integers(0, len(path) + 1))
        if depth == 0 and (max_roots is None or len(roots) < max_roots or not path):
            roots.append(v)
            path = [v]
            continue
        depth = max(depth, 1)
        p = path[depth - 1]
        children.setdefault(p, []).append(v)
        path = path[:depth] + [v]
    return OrderedForest(tuple(roots), {p: tuple(c) for p, c in children.items()})
