"""Quadrant drawings of rooted ordered forests with at most ``W`` vertices.

A Q1 drawing puts the last root at ``(0, 4W)``.  A single tree is drawn by
placing its root and shifting the drawing of its child forest one unit right
and two units down; a forest ``T_1, ..., T_k`` is drawn by hanging the drawing
of ``T_1`` two units below the drawing of ``T_2, ..., T_k``.  Unrolled, the
vertex visited ``r``-th by a pre-order walk that takes trees and children from
last to first lands at ``(depth, 4W - 2r)``, which is what :func:`draw_q1`
computes with an explicit stack.

The other quadrants are clockwise rotations of Q1 about the origin.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

from .core import GraphStoryError, Point


class ForestTooLarge(GraphStoryError):
    pass


class EmptyForest(GraphStoryError):
    pass


class InvalidForest(GraphStoryError):
    pass


class Quadrant(str, enum.Enum):
    """Q1 is north-east; Q4, Q3, Q2 are Q1 turned 90, 180, 270 degrees clockwise."""

    Q1 = "Q1"
    Q4 = "Q4"
    Q3 = "Q3"
    Q2 = "Q2"

    def rotate(self, p: Point) -> Point:
        x, y = p
        if self is Quadrant.Q1:
            return x, y
        if self is Quadrant.Q4:
            return y, -x
        if self is Quadrant.Q3:
            return -x, -y
        return -y, x


@dataclass(frozen=True)
class OrderedForest:
    """Trees ``T_1..T_k`` given by their roots, plus ordered child lists.

    Vertices missing from ``children`` are leaves.
    """

    roots: tuple[Hashable, ...]
    children: Mapping[Hashable, tuple[Hashable, ...]] = field(default_factory=dict)

    @classmethod
    def from_parents(cls, parent: Mapping[Hashable, Hashable | None], order: Iterable[Hashable]) -> OrderedForest:
        """Forest from parent pointers; ``order`` fixes roots' and siblings' order."""
        roots: list[Hashable] = []
        children: dict[Hashable, list[Hashable]] = {}
        for v in order:
            p = parent[v]
            if p is None:
                roots.append(v)
            else:
                children.setdefault(p, []).append(v)
        return cls(tuple(roots), {p: tuple(c) for p, c in children.items()})

    def vertices(self) -> list[Hashable]:
        """All vertices in pre-order (trees and children first to last)."""
        out: list[Hashable] = []
        seen: set[Hashable] = set()
        stack = list(reversed(self.roots))
        while stack:
            v = stack.pop()
            if v in seen:
                raise InvalidForest(f"vertex {v!r} is reachable twice")
            seen.add(v)
            out.append(v)
            stack.extend(reversed(self.children.get(v, ())))
        return out

    @property
    def vertex_count(self) -> int:
        return len(self.vertices())

    def parent_map(self) -> dict[Hashable, Hashable | None]:
        parent: dict[Hashable, Hashable | None] = {r: None for r in self.roots}
        for p, kids in self.children.items():
            for c in kids:
                parent[c] = p
        return parent

    def validate(self) -> None:
        seen = set(self.vertices())
        stray = [v for v in self.children if v not in seen]
        if stray:
            raise InvalidForest(f"child lists for unreachable vertices {stray[:5]!r}")


def draw_q1(forest: OrderedForest, window: int) -> dict[Hashable, Point]:
    roots, children = forest.roots, forest.children
    if not roots:
        raise EmptyForest("cannot draw an empty forest")
    top = 4 * window
    pos: dict[Hashable, Point] = {}
    stack = [(r, 0) for r in roots]
    while stack:
        v, depth = stack.pop()
        if v in pos:
            raise InvalidForest(f"vertex {v!r} is reachable twice")
        pos[v] = (depth, top - 2 * len(pos))
        if len(pos) > window:
            raise ForestTooLarge(f"forest has more than W={window} vertices")
        kids = children.get(v)
        if kids:
            depth += 1
            stack.extend((c, depth) for c in kids)
    return pos


def draw_quadrant(forest: OrderedForest, window: int, quadrant: Quadrant | str) -> dict[Hashable, Point]:
    q = Quadrant(quadrant)
    pos = draw_q1(forest, window)
    if q is Quadrant.Q1:
        return pos
    return {v: q.rotate(p) for v, p in pos.items()}


def wedge_contains(apex: Point, p: Point) -> bool:
    """Whether ``p`` lies in the closed wedge between the rightward ray and the slope -2 ray at ``apex``."""
    dx = p[0] - apex[0]
    dy = p[1] - apex[1]
    return dy <= 0 and dy + 2 * dx >= 0
