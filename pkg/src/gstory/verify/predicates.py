"""Exact integer predicates on points and closed segments."""

from __future__ import annotations

from ..core import Point, ViolationKind


def orient(a: Point, b: Point, c: Point) -> int:
    """Twice the signed area of ``abc``: positive when ``c`` is left of ``a -> b``."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def in_box(p: Point, a: Point, b: Point) -> bool:
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def on_segment(p: Point, a: Point, b: Point) -> bool:
    return orient(a, b, p) == 0 and in_box(p, a, b)


def in_relative_interior(p: Point, a: Point, b: Point) -> bool:
    return p != a and p != b and on_segment(p, a, b)


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


def segment_pair_violation(a: Point, b: Point, c: Point, d: Point) -> ViolationKind | None:
    """Classify two edges sharing no vertex: proper crossing, any other contact, or none."""
    d1, d2 = _sign(orient(a, b, c)), _sign(orient(a, b, d))
    d3, d4 = _sign(orient(c, d, a)), _sign(orient(c, d, b))
    if d1 * d2 < 0 and d3 * d4 < 0:
        return ViolationKind.CROSSING
    if (
        (d1 == 0 and in_box(c, a, b))
        or (d2 == 0 and in_box(d, a, b))
        or (d3 == 0 and in_box(a, c, d))
        or (d4 == 0 and in_box(b, c, d))
    ):
        return ViolationKind.OVERLAP
    return None


def adjacent_pair_violation(s: Point, p: Point, q: Point) -> ViolationKind | None:
    """Edges ``s-p`` and ``s-q`` sharing ``s`` overlap iff they leave ``s`` in the same direction."""
    if orient(s, p, q) == 0 and (p[0] - s[0]) * (q[0] - s[0]) + (p[1] - s[1]) * (q[1] - s[1]) > 0:
        return ViolationKind.OVERLAP
    return None


def segment_meets_wedge_off_ray(apex: Point, p: Point, q: Point) -> bool:
    """Whether segment ``pq`` meets the slope -2 wedge at ``apex`` anywhere off its slope -2 ray.

    The wedge is ``dy <= 0`` and ``dy + 2 dx >= 0`` (relative to the apex); the
    slope -2 ray is where the second inequality is tight, so the forbidden
    region is ``dy <= 0`` and ``dy + 2 dx > 0``.
    """
    f0, f1 = p[1] - apex[1], q[1] - apex[1]
    g0 = f0 + 2 * (p[0] - apex[0])
    g1 = f1 + 2 * (q[0] - apex[0])
    if (f0 <= 0 and g0 > 0) or (f1 <= 0 and g1 > 0):
        return True
    if (f0 > 0) == (f1 > 0):
        # either no point with dy <= 0, or the whole segment has dy <= 0 and
        # the linear g peaks at an endpoint already tested
        return False
    # g at the point where dy = 0, scaled by (f0 - f1)
    num = f0 * g1 - f1 * g0
    return num * (f0 - f1) > 0


def point_in_wedge_interior(apex: Point, p: Point) -> bool:
    dy = p[1] - apex[1]
    return dy < 0 and dy + 2 * (p[0] - apex[0]) > 0
