"""Pairwise contact tests between the vertices and edges of a drawing.

Two engines produce the same violations:

* :func:`windowed_violations` enumerates, with numpy, every pair of elements
  (vertices or edges) whose appearance indices fit in some key window, and
  tests each pair once.  With the key being the appearance index and the span
  ``W - 1`` these are exactly the pairs that share a frame; each is reported at
  the first frame containing it.
* :func:`brute_force_frame_violations` walks every frame and tests every pair
  of its live elements with the scalar predicates.
"""

from __future__ import annotations

import json
from typing import Callable, Iterator

import numpy as np

from ..core import DrawingStory, GraphStory, Violation, ViolationKind, argsort_by, frames
from . import predicates as pr

CHUNK = 1 << 20


def _pair_chunks(lo: np.ndarray, hi: np.ndarray, span: int) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Index pairs ``(i, j)``, ``i != j``, with ``max(hi) - min(lo) <= span``, in chunks."""
    m = len(lo)
    if m < 2:
        return
    order = argsort_by(lo)
    lo_s, hi_s = lo[order], hi[order]
    end = np.searchsorted(lo_s, lo_s + span, side="right")
    counts = np.maximum(end - np.arange(m) - 1, 0)
    csum = np.cumsum(counts)
    s = 0
    while s < m:
        base = int(csum[s - 1]) if s else 0
        t = max(int(np.searchsorted(csum, base + CHUNK, side="right")), s + 1)
        cnt = counts[s:t]
        total = int(cnt.sum())
        if total:
            i = np.repeat(np.arange(s, t), cnt)
            offs = np.arange(total) - np.repeat(np.cumsum(cnt) - cnt, cnt)
            j = i + 1 + offs
            keep = np.maximum(hi_s[i], hi_s[j]) - lo_s[i] <= span
            yield order[i[keep]], order[j[keep]]
        s = t


def _orient(ax, ay, bx, by, cx, cy):
    return np.sign((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))


def _in_box(px, py, ax, ay, bx, by):
    return (
        (np.minimum(ax, bx) <= px)
        & (px <= np.maximum(ax, bx))
        & (np.minimum(ay, by) <= py)
        & (py <= np.maximum(ay, by))
    )


def _edge_edge(xy, e1, e2):
    """Kinds for edge pairs: 0 none, 1 crossing, 2 overlap."""
    a, b, c, d = e1[:, 0], e1[:, 1], e2[:, 0], e2[:, 1]
    out = np.zeros(len(a), dtype=np.int8)
    shared = (a == c) | (a == d) | (b == c) | (b == d)
    # adjacent: overlap iff both edges leave the shared vertex in one direction
    if shared.any():
        sa, sb, sc, sd = a[shared], b[shared], c[shared], d[shared]
        s = np.where((sa == sc) | (sa == sd), sa, sb)
        p = np.where(sa == s, sb, sa)
        q = np.where(sc == s, sd, sc)
        S, P, Q = xy[s], xy[p], xy[q]
        col = _orient(S[:, 0], S[:, 1], P[:, 0], P[:, 1], Q[:, 0], Q[:, 1]) == 0
        dot = (P[:, 0] - S[:, 0]) * (Q[:, 0] - S[:, 0]) + (P[:, 1] - S[:, 1]) * (Q[:, 1] - S[:, 1])
        out[shared] = np.where(col & (dot > 0), 2, 0)
    free = ~shared
    if free.any():
        A, B, C, D = xy[a[free]], xy[b[free]], xy[c[free]], xy[d[free]]
        ax, ay, bx, by = A[:, 0], A[:, 1], B[:, 0], B[:, 1]
        cx, cy, dx, dy = C[:, 0], C[:, 1], D[:, 0], D[:, 1]
        d1, d2 = _orient(ax, ay, bx, by, cx, cy), _orient(ax, ay, bx, by, dx, dy)
        d3, d4 = _orient(cx, cy, dx, dy, ax, ay), _orient(cx, cy, dx, dy, bx, by)
        proper = (d1 * d2 < 0) & (d3 * d4 < 0)
        touch = (
            ((d1 == 0) & _in_box(cx, cy, ax, ay, bx, by))
            | ((d2 == 0) & _in_box(dx, dy, ax, ay, bx, by))
            | ((d3 == 0) & _in_box(ax, ay, cx, cy, dx, dy))
            | ((d4 == 0) & _in_box(bx, by, cx, cy, dx, dy))
        )
        out[free] = np.where(proper, 1, np.where(touch, 2, 0))
    return out


def _vertex_edge(xy, w, e):
    """Whether vertex ``w`` (not an endpoint) lies in the relative interior of edge ``e``."""
    a, b = e[:, 0], e[:, 1]
    P, A, B = xy[w], xy[a], xy[b]
    px, py, ax, ay, bx, by = P[:, 0], P[:, 1], A[:, 0], A[:, 1], B[:, 0], B[:, 1]
    on = (_orient(ax, ay, bx, by, px, py) == 0) & _in_box(px, py, ax, ay, bx, by)
    at_end = ((px == ax) & (py == ay)) | ((px == bx) & (py == by))
    return on & ~at_end & (w != a) & (w != b)


class PairStats:
    def __init__(self) -> None:
        self.edge_pairs = 0


def windowed_violations(
    story: GraphStory,
    xy: np.ndarray,
    key: np.ndarray,
    span: int,
    edge_mask: np.ndarray | None = None,
    label: Callable[[np.ndarray], tuple[int | None, dict]] | None = None,
    stats: PairStats | None = None,
) -> list[Violation]:
    """Violations among element pairs whose ``key`` values span at most ``span``.

    ``key`` is indexed by vertex; an edge's key range is that of its endpoints.
    ``label(vertex_indices)`` returns the frame and extra witnesses for a pair.
    """
    n = story.n
    e = story.edges if edge_mask is None else story.edges[edge_mask]
    m = len(e)
    ea = np.concatenate([np.arange(n, dtype=np.int64), e[:, 0]])
    eb = np.concatenate([np.arange(n, dtype=np.int64), e[:, 1]])
    ka, kb = key[ea], key[eb]
    lo, hi = np.minimum(ka, kb), np.maximum(ka, kb)
    ids = story.ids
    found: list[Violation] = []

    def emit(kind, verts, wit):
        frame, extra = label(verts) if label else (None, {})
        wit.update(extra)
        found.append(Violation(kind, frame, wit))

    for i, j in _pair_chunks(lo, hi, span):
        ie, je = i >= n, j >= n
        # vertex-vertex
        vv = ~ie & ~je
        if vv.any():
            a, b = i[vv], j[vv]
            hit = np.all(xy[a] == xy[b], axis=1)
            for u, v in zip(a[hit].tolist(), b[hit].tolist()):
                u, v = min(u, v), max(u, v)
                emit(ViolationKind.OVERLAP, [u, v], {"vertices": [ids[u], ids[v]], "point": list(map(int, xy[u]))})
        # vertex-edge
        ve = ie ^ je
        if ve.any():
            w = np.where(ie[ve], j[ve], i[ve])
            k = np.where(ie[ve], i[ve], j[ve]) - n
            hit = _vertex_edge(xy, w, e[k])
            for wv, kk in zip(w[hit].tolist(), k[hit].tolist()):
                a, b = int(e[kk, 0]), int(e[kk, 1])
                emit(ViolationKind.OVERLAP, [wv, a, b], {"vertex": ids[wv], "edge": [ids[a], ids[b]]})
        # edge-edge
        ee = ie & je
        if ee.any():
            k1, k2 = i[ee] - n, j[ee] - n
            k1, k2 = np.minimum(k1, k2), np.maximum(k1, k2)
            if stats is not None:
                stats.edge_pairs += len(k1)
            res = _edge_edge(xy, e[k1], e[k2])
            hit = res > 0
            for r, p, q in zip(res[hit].tolist(), k1[hit].tolist(), k2[hit].tolist()):
                (a, b), (c, d) = e[p].tolist(), e[q].tolist()
                kind = ViolationKind.CROSSING if r == 1 else ViolationKind.OVERLAP
                emit(kind, [a, b, c, d], {"edges": [[ids[a], ids[b]], [ids[c], ids[d]]]})
    return sort_violations(found)


def sort_violations(vs: list[Violation]) -> list[Violation]:
    return sorted(
        vs,
        key=lambda v: (
            -1 if v.frame is None else v.frame,
            v.kind.value,
            json.dumps(v.witnesses, sort_keys=True, default=str),
        ),
    )


def frame_violations(drawing: DrawingStory, stats: PairStats | None = None) -> list[Violation]:
    story = drawing.story
    n, w = story.n, story.window
    key = np.arange(n, dtype=np.int64)
    e = story.edges
    live = np.abs(e[:, 0] - e[:, 1]) < w if len(e) else np.zeros(0, dtype=bool)

    def label(verts):
        return max(verts) + 1, {}

    return windowed_violations(story, drawing.xy, key, w - 1, live, label, stats)


def bucket_pair_violations(drawing: DrawingStory, stats: PairStats | None = None) -> list[Violation]:
    """Violations of the induced drawing of each union of two consecutive buckets.

    With a single bucket the union degenerates to that bucket.
    """
    story = drawing.story
    b = story.bucket_index
    e = story.edges
    near = np.abs(b[e[:, 0]] - b[e[:, 1]]) <= 1 if len(e) else np.zeros(0, dtype=bool)
    h = int(b[-1]) + 1 if story.n else 0

    def label(verts):
        lo, hi = int(b[min(verts, key=lambda v: b[v])]), int(b[max(verts, key=lambda v: b[v])])
        first = lo if hi > lo else max(min(lo, h - 2), 0)
        return None, {"buckets": [first + 1, min(first + 2, h)]}

    return windowed_violations(story, drawing.xy, b, 1, near, label, stats)


def induced_violations(drawing: DrawingStory, stats: PairStats | None = None) -> list[Violation]:
    story = drawing.story
    key = np.zeros(story.n, dtype=np.int64)
    return windowed_violations(story, drawing.xy, key, 0, None, None, stats)


# ---------------------------------------------------------------------------
# scalar per-frame engine


def _frame_pair_violations(ids, pos, live_v, live_e):
    """All contacts among one frame's elements, keyed for de-duplication."""
    out = {}
    idx = {v: k for k, v in enumerate(ids)}
    vs = sorted(live_v, key=idx.__getitem__)
    for x in range(len(vs)):
        for y in range(x + 1, len(vs)):
            u, v = vs[x], vs[y]
            if pos[u] == pos[v]:
                out[("vv", u, v)] = (ViolationKind.OVERLAP, {"vertices": [u, v], "point": list(pos[u])}, (u, v))
    for wv in vs:
        for a, b in live_e:
            if wv != a and wv != b and pr.in_relative_interior(pos[wv], pos[a], pos[b]):
                out[("ve", wv, a, b)] = (ViolationKind.OVERLAP, {"vertex": wv, "edge": [a, b]}, (wv, a, b))
    for x in range(len(live_e)):
        for y in range(x + 1, len(live_e)):
            (a, b), (c, d) = live_e[x], live_e[y]
            common = {a, b} & {c, d}
            if common:
                s = common.pop()
                p = b if a == s else a
                q = d if c == s else c
                kind = pr.adjacent_pair_violation(pos[s], pos[p], pos[q])
            else:
                kind = pr.segment_pair_violation(pos[a], pos[b], pos[c], pos[d])
            if kind is not None:
                out[("ee", a, b, c, d)] = (kind, {"edges": [[a, b], [c, d]]}, (a, b, c, d))
    return out


def brute_force_frame_violations(drawing: DrawingStory) -> tuple[list[Violation], int, int]:
    """Every pair of every frame, scalar predicates; each contact reported at its first frame.

    Returns the violations, the frame count and the number of edge pairs tested.
    """
    story = drawing.story
    pos = drawing.positions
    order = {(a, b): k for k, (a, b) in enumerate(story.edge_list)}
    seen: dict = {}
    tested = 0
    count = 0
    for fr in frames(story):
        count += 1
        live_e = sorted(fr.live_edges, key=order.__getitem__)
        tested += len(live_e) * (len(live_e) - 1) // 2
        for key, val in _frame_pair_violations(story.ids, pos, fr.live_vertices, live_e).items():
            seen.setdefault(key, (fr.t, val))
    found = [Violation(kind, t, wit) for t, (kind, wit, _) in seen.values()]
    return sort_violations(found), count, tested
