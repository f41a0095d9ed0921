"""Path stories on a ``2W x 2W`` grid.

Buckets are paired twice, with an offset of one bucket: an x-bucket is
``B_1`` or ``B_{2i-2} | B_{2i-1}``, a y-bucket is ``B_{2j-1} | B_{2j}``.  A
vertex's x (y) coordinate is its rank, in path order, inside its x-bucket
(y-bucket).  Every frame lies inside a single x- or y-bucket, and the
drawing of each axis bucket is monotone, hence planar.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order

from .core import DrawingStory, GraphStory, GridBox, NotAPath, StoryKind


@dataclass(frozen=True, eq=False)
class AxisBuckets:
    """Per-vertex axis buckets and ranks, indexed by appearance index.

    All four arrays are 1-based; ``path_order`` lists appearance indices from
    ``v_1`` to ``v_n``.
    """

    x_bucket: np.ndarray
    y_bucket: np.ndarray
    x_rank: np.ndarray
    y_rank: np.ndarray
    path_order: np.ndarray


def path_order(story: GraphStory) -> np.ndarray:
    """Appearance indices along the path, starting at the endpoint with smaller tau."""
    if story.kind is not StoryKind.PATH:
        raise NotAPath(f"story kind is {story.kind.value}, not path")
    n = story.n
    if n == 1:
        return np.zeros(1, dtype=np.int64)
    e = story.edges
    flat = e.ravel()
    # renumber vertices by some position where they occur in the edge list, so
    # the walk follows memory when edges are listed roughly along the path;
    # any occurrence works since positions are distinct
    seen = np.empty(n, dtype=np.int64)
    seen[flat] = np.arange(len(flat))
    mark = np.zeros(len(flat), dtype=bool)
    mark[seen] = True
    new = np.cumsum(mark)[seen] - 1
    old = np.empty(n, dtype=np.int64)
    old[new] = np.arange(n)
    # two neighbour slots per vertex; an endpoint's spare slot points to itself
    src = new[np.concatenate([e[:, 0], e[:, 1]])]
    dst = new[np.concatenate([e[:, 1], e[:, 0]])]
    nb = np.repeat(np.arange(n, dtype=np.int32)[:, None], 2, axis=1)
    nb[src, 0] = dst
    other = nb[src, 0] != dst
    nb[src[other], 1] = dst[other]
    start = int(np.flatnonzero(np.bincount(flat, minlength=n) == 1)[0])
    # float data keeps scipy from converting (and re-sorting) the matrix
    graph = csr_matrix((np.ones(2 * n), nb.ravel(), np.arange(0, 2 * n + 1, 2, dtype=np.int32)), shape=(n, n))
    order = breadth_first_order(graph, int(new[start]), directed=True, return_predecessors=False)
    if len(order) != n:
        raise NotAPath("path is not connected")
    return old[order]


def _block_ranks(along: np.ndarray, lead: int, width: int) -> np.ndarray:
    """1-based rank of ``along[k]`` inside its block of appearance indices.

    Blocks are ``[0, width - lead)`` and then consecutive runs of ``width``;
    ranking each short row keeps the work linear for a fixed window.
    """
    n = len(along)
    rows = -(-(n + lead) // width)
    pad = np.full(rows * width, n, dtype=np.int64)  # padding ranks last
    pad[lead : lead + n] = along
    grid = pad.reshape(rows, width)
    ranks = np.empty_like(grid)
    np.put_along_axis(ranks, grid.argsort(axis=1), np.arange(1, width + 1), axis=1)
    return ranks.ravel()[lead : lead + n]


def axis_buckets(story: GraphStory) -> AxisBuckets:
    order = path_order(story)
    n, w = story.n, story.window
    bucket = story.bucket_index + 1
    # x- and y-buckets are runs of at most 2W consecutive appearance indices,
    # so ranking along the path means ranking path positions inside each run
    along = np.empty(n, dtype=np.int64)
    along[order] = np.arange(n)
    x_rank = _block_ranks(along, w, 2 * w)
    y_rank = _block_ranks(along, 0, 2 * w)
    return AxisBuckets(bucket // 2 + 1, (bucket + 1) // 2, x_rank, y_rank, order)


def layout_path(story: GraphStory) -> DrawingStory:
    """Planar straight-line drawing story on the ``[1, 2W]^2`` grid."""
    ab = axis_buckets(story)
    w = story.window
    return DrawingStory(story, np.stack([ab.x_rank, ab.y_rank], axis=1), GridBox(1, 2 * w, 1, 2 * w))
