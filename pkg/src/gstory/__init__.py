"""Planar straight-line grid drawing stories for windowed graph stories."""

from .core import (
    BucketPartition,
    DrawingStory,
    Frame,
    GraphStory,
    GraphStoryError,
    GridBox,
    InvalidStory,
    MissingPosition,
    NotAPath,
    NotATree,
    StoryKind,
    Violation,
    ViolationKind,
    buckets,
    frames,
    window_supergraph_index,
)
from .forest_drawer import OrderedForest, Quadrant, draw_q1, draw_quadrant, wedge_contains
from .generate import BadSize, concentric_layout, gen_nested_triangles, gen_path, gen_tree
from .path_layout import axis_buckets, layout_path
from .tree_layout import build_tree_layout, layout_tree

__all__ = [
    "BadSize",
    "BucketPartition",
    "DrawingStory",
    "Frame",
    "GraphStory",
    "GraphStoryError",
    "GridBox",
    "InvalidStory",
    "MissingPosition",
    "NotAPath",
    "NotATree",
    "OrderedForest",
    "Quadrant",
    "StoryKind",
    "Violation",
    "ViolationKind",
    "axis_buckets",
    "buckets",
    "concentric_layout",
    "build_tree_layout",
    "draw_q1",
    "draw_quadrant",
    "frames",
    "gen_nested_triangles",
    "gen_path",
    "gen_tree",
    "layout_path",
    "layout_tree",
    "wedge_contains",
    "window_supergraph_index",
]
