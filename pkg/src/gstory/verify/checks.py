"""Verification entry points returning :class:`VerificationReport` objects."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

from ..core import DrawingStory, GridBox, Point, Violation, ViolationKind, VertexId
from . import planarity
from . import predicates as pr


@dataclass
class VerificationReport:
    violations: list[Violation] = field(default_factory=list)
    checked_frames: int = 0
    checked_edge_pairs: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    def merge(self, other: VerificationReport) -> VerificationReport:
        return VerificationReport(
            planarity.sort_violations(self.violations + other.violations),
            max(self.checked_frames, other.checked_frames),
            self.checked_edge_pairs + other.checked_edge_pairs,
        )

    def kinds(self) -> set[ViolationKind]:
        return {v.kind for v in self.violations}


def check_frame_planarity(drawing: DrawingStory, exhaustive: bool = False) -> VerificationReport:
    """Crossings and overlaps inside any frame; each reported at its first frame.

    ``exhaustive`` walks the frames and tests all pairs of each one; the default
    enumerates co-occurring pairs directly and tests each once.
    """
    if exhaustive:
        found, count, tested = planarity.brute_force_frame_violations(drawing)
        return VerificationReport(found, count, tested)
    stats = planarity.PairStats()
    found = planarity.frame_violations(drawing, stats)
    return VerificationReport(found, drawing.story.frame_count, stats.edge_pairs)


def check_bucket_pair_planarity(drawing: DrawingStory) -> VerificationReport:
    """Planarity of the drawing induced by each union of two consecutive buckets."""
    stats = planarity.PairStats()
    found = planarity.bucket_pair_violations(drawing, stats)
    return VerificationReport(found, 0, stats.edge_pairs)


def check_induced_planarity(drawing: DrawingStory) -> VerificationReport:
    """Planarity of the whole graph drawn at the story's positions."""
    stats = planarity.PairStats()
    found = planarity.induced_violations(drawing, stats)
    return VerificationReport(found, 0, stats.edge_pairs)


def check_grid_bounds(drawing: DrawingStory, box: GridBox) -> VerificationReport:
    xy = drawing.xy
    out = (xy[:, 0] < box.xmin) | (xy[:, 0] > box.xmax) | (xy[:, 1] < box.ymin) | (xy[:, 1] > box.ymax)
    ids = drawing.story.ids
    found = [
        Violation(ViolationKind.OUT_OF_BOUNDS, None, {"vertex": ids[k], "point": xy[k].tolist(), "box": box.to_json()})
        for k in out.nonzero()[0].tolist()
    ]
    return VerificationReport(found, drawing.story.frame_count, 0)


def check_position_stability(
    source: DrawingStory | Mapping[int, Mapping[VertexId, Point]],
) -> VerificationReport:
    """Flag vertices whose position differs between frames.

    ``source`` is a drawing story (stable by construction) or a map from frame
    index to per-frame positions.
    """
    if isinstance(source, DrawingStory):
        return VerificationReport([], source.story.frame_count, 0)
    first: dict[VertexId, tuple[int, Point]] = {}
    found = []
    for t in sorted(source):
        for v, p in source[t].items():
            p = (int(p[0]), int(p[1]))
            if v not in first:
                first[v] = (t, p)
            elif first[v][1] != p:
                t0, p0 = first[v]
                found.append(
                    Violation(ViolationKind.MOVED_VERTEX, t, {"vertex": v, "from": list(p0), "to": list(p), "first_frame": t0})
                )
    return VerificationReport(found, len(source), 0)


# ---------------------------------------------------------------------------
# forest drawings


def _order(kind: ViolationKind, cond: str, **wit) -> Violation:
    return Violation(kind, None, {"condition": cond, **wit})


def check_definition1(
    roots: Iterable[Hashable],
    children: Mapping[Hashable, Iterable[Hashable]],
    pos: Mapping[Hashable, Point],
    window: int,
) -> VerificationReport:
    """Quadrant-one conditions for a drawing of an ordered forest.

    Checks the band, the roots on the y-axis ending at ``(0, 4W)``, tree and
    subtree separation, empty wedges, planarity, and the strictly upward,
    strictly leftward and order-preserving properties.  The forest is walked
    independently of any drawing code.
    """
    roots = list(roots)
    kids = {v: list(c) for v, c in children.items()}
    parent: dict[Hashable, Hashable] = {}
    for v, cs in kids.items():
        for c in cs:
            parent[c] = v
    verts: list[Hashable] = []
    stack = list(reversed(roots))
    while stack:
        v = stack.pop()
        verts.append(v)
        stack.extend(reversed(kids.get(v, [])))
    m = len(verts)
    top = 4 * window
    found: list[Violation] = []
    missing = [v for v in verts if v not in pos]
    if missing:
        found.append(_order(ViolationKind.OUT_OF_BOUNDS, "i", missing=missing))
        return VerificationReport(found)

    # subtree y ranges, children before parents
    lo_y = {v: pos[v][1] for v in verts}
    hi_y = dict(lo_y)
    for v in reversed(verts):
        p = parent.get(v)
        if p is not None:
            lo_y[p] = min(lo_y[p], lo_y[v])
            hi_y[p] = max(hi_y[p], hi_y[v])

    # (i) band
    for v in verts:
        x, y = pos[v]
        if not (0 <= x <= m - 1 and top - 2 * m + 2 <= y <= top):
            found.append(_order(ViolationKind.OUT_OF_BOUNDS, "i", vertex=v, point=[x, y]))
    # (ii) roots on the y-axis, ascending, last one at the top
    for k, r in enumerate(roots):
        x, y = pos[r]
        if x != 0 or not (2 * window + 2 <= y <= top):
            found.append(_order(ViolationKind.ORDER_VIOLATION, "ii", vertex=r, point=[x, y]))
        if k and pos[roots[k - 1]][1] >= y:
            found.append(_order(ViolationKind.ORDER_VIOLATION, "ii", vertices=[roots[k - 1], r]))
    if roots and tuple(pos[roots[-1]]) != (0, top):
        found.append(_order(ViolationKind.ORDER_VIOLATION, "ii", vertex=roots[-1], point=list(pos[roots[-1]])))
    # (iii) trees stacked bottom to top
    for a, b in zip(roots, roots[1:]):
        if hi_y[a] >= lo_y[b]:
            found.append(_order(ViolationKind.ORDER_VIOLATION, "iii", trees=[a, b]))
    # (iv) subtrees of consecutive children stacked bottom to top
    for v in verts:
        cs = kids.get(v, [])
        for a, b in zip(cs, cs[1:]):
            if hi_y[a] >= lo_y[b]:
                found.append(_order(ViolationKind.ORDER_VIOLATION, "iv", vertex=v, subtrees=[a, b]))
    # (v) every wedge meets the drawing only along its slope -2 ray
    edges = [(parent[c], c) for c in verts if c in parent]
    for v in verts:
        a = pos[v]
        for u in verts:
            if u != v and pr.segment_meets_wedge_off_ray(a, pos[u], pos[u]):
                found.append(Violation(ViolationKind.WEDGE_INTRUSION, None, {"condition": "v", "apex": v, "vertex": u}))
        for p, c in edges:
            if pr.segment_meets_wedge_off_ray(a, pos[p], pos[c]):
                found.append(Violation(ViolationKind.WEDGE_INTRUSION, None, {"condition": "v", "apex": v, "edge": [p, c]}))
    # planarity
    for x in range(m):
        for y in range(x + 1, m):
            if pos[verts[x]] == pos[verts[y]]:
                found.append(Violation(ViolationKind.OVERLAP, None, {"vertices": [verts[x], verts[y]]}))
    for w in verts:
        for p, c in edges:
            if w != p and w != c and pr.in_relative_interior(pos[w], pos[p], pos[c]):
                found.append(Violation(ViolationKind.OVERLAP, None, {"vertex": w, "edge": [p, c]}))
    for x in range(len(edges)):
        for y in range(x + 1, len(edges)):
            (a, b), (c, d) = edges[x], edges[y]
            common = {a, b} & {c, d}
            if common:
                s = common.pop()
                kind = pr.adjacent_pair_violation(pos[s], pos[b if a == s else a], pos[d if c == s else c])
            else:
                kind = pr.segment_pair_violation(pos[a], pos[b], pos[c], pos[d])
            if kind is not None:
                found.append(Violation(kind, None, {"edges": [[a, b], [c, d]]}))
    # strictly upward and leftward: parent above and to the left
    for p, c in edges:
        if not pos[p][1] > pos[c][1]:
            found.append(_order(ViolationKind.ORDER_VIOLATION, "upward", edge=[p, c]))
        if not pos[p][0] < pos[c][0]:
            found.append(_order(ViolationKind.ORDER_VIOLATION, "leftward", edge=[p, c]))
    # order-preserving: consecutive children counterclockwise around the parent
    for v in verts:
        cs = kids.get(v, [])
        for a, b in zip(cs, cs[1:]):
            if pr.orient(pos[v], pos[a], pos[b]) <= 0:
                found.append(_order(ViolationKind.ORDER_VIOLATION, "order", vertex=v, children=[a, b]))
    return VerificationReport(found)
