"""Tree stories on an ``(8W+1) x (8W+1)`` grid.

Pipeline, with vertices addressed by 0-based appearance index:

1. drop edges joining buckets more than one apart (they live in no frame);
2. reconnect the resulting forest with dummy edges that never skip a bucket;
3. root the tree at the first vertex and split it into pertinent components
   (maximal same-bucket subtrees), layered into sets ``R_1, R_2, ...`` by
   breadth-first expansion from the root's component;
4. order children: same-component children first, then the others;
5. collect the components of each bucket into four ordered forests by
   ``j mod 4`` and draw each in its quadrant.

Odd buckets land next to the y-axis (Q1/Q3), even buckets next to the x-axis
(Q4/Q2), so two consecutive buckets never share a quadrant.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, depth_first_order

from .core import DrawingStory, GraphStory, GridBox, NotATree, StoryKind, adjacency, argsort_by, component_labels
from .forest_drawer import ForestTooLarge, OrderedForest, Quadrant, draw_quadrant

EMPTY_EDGES = np.zeros((0, 2), dtype=np.int64)

_QUADRANT_BY_SET_MOD4 = {1: Quadrant.Q1, 2: Quadrant.Q4, 3: Quadrant.Q3, 0: Quadrant.Q2}


def quadrant_for_set(j: int) -> Quadrant:
    return _QUADRANT_BY_SET_MOD4[j % 4]


@dataclass(frozen=True)
class PertinentComponent:
    id: int
    vertices: tuple[int, ...]
    bucket: int
    set_index: int
    root: int


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Rooted tree with pertinent components and their sets ``R_j``.

    ``parent[root] == -1``; ``component`` maps each vertex to a component id;
    components are numbered by ascending ``(set_index, root)`` and described by
    the ``comp_*`` arrays (buckets 1-based).
    """

    parent: np.ndarray
    depth: np.ndarray
    component: np.ndarray
    comp_root: np.ndarray
    comp_set: np.ndarray
    comp_bucket: np.ndarray
    window: int

    @property
    def n(self) -> int:
        return len(self.parent)

    @cached_property
    def set_index(self) -> np.ndarray:
        """``j`` of every vertex."""
        return self.comp_set[self.component]

    def set_index_of(self, v: int) -> int:
        return int(self.comp_set[self.component[v]])

    @cached_property
    def components(self) -> list[PertinentComponent]:
        count = len(self.comp_root)
        members = argsort_by(self.component)
        bounds = np.searchsorted(self.component[members], np.arange(count + 1)).tolist()
        members_l = members.tolist()
        return [
            PertinentComponent(c, tuple(members_l[bounds[c] : bounds[c + 1]]), b, j, r)
            for c, (b, j, r) in enumerate(
                zip(self.comp_bucket.tolist(), self.comp_set.tolist(), self.comp_root.tolist())
            )
        ]


@dataclass(frozen=True, eq=False)
class OrderedTree:
    """Children of ``v`` are ``child_list[child_start[v]:child_start[v + 1]]``.

    The first ``same_count[v]`` of them belong to ``v``'s own component.
    ``pre`` and ``post`` are every vertex's pre-order and post-order ranks.
    """

    root: int
    child_start: np.ndarray
    child_list: np.ndarray
    same_count: np.ndarray
    pre: np.ndarray
    post: np.ndarray

    def children(self, v: int) -> list[int]:
        return self.child_list[self.child_start[v] : self.child_start[v + 1]].tolist()


@dataclass(frozen=True)
class ForestAssignment:
    """Forest ``F_{i.q}`` for bucket ``i`` (1-based) and quadrant ``q``; empty ones are absent."""

    forests: dict[tuple[int, Quadrant], OrderedForest]
    component_order: dict[tuple[int, Quadrant], tuple[int, ...]]

    def forest(self, bucket: int, quadrant: Quadrant) -> OrderedForest | None:
        return self.forests.get((bucket, quadrant))


@dataclass(frozen=True, eq=False)
class TreeLayout:
    drawing: DrawingStory
    removed_edges: np.ndarray
    dummy_edges: np.ndarray
    decomposition: Decomposition
    tree: OrderedTree

    @cached_property
    def assignment(self) -> ForestAssignment:
        return phase5_build_forests(self.decomposition, self.tree)

    def quadrants(self) -> list[Quadrant]:
        return [quadrant_for_set(j) for j in self.decomposition.set_index.tolist()]

    def dump(self) -> list[dict]:
        """Per-vertex bucket, component, set index and quadrant."""
        dec = self.decomposition
        comp = dec.component.tolist()
        bucket = dec.comp_bucket[dec.component].tolist()
        sets = dec.set_index.tolist()
        return [
            {
                "id": v,
                "tau": k + 1,
                "bucket": bucket[k],
                "component": comp[k],
                "set_index": sets[k],
                "quadrant": quadrant_for_set(sets[k]).value,
            }
            for k, v in enumerate(self.drawing.story.ids)
        ]


def _bucket(n: int, window: int) -> np.ndarray:
    return np.arange(n, dtype=np.int64) // window


def _ancestor_sums(parent: np.ndarray, weight: np.ndarray) -> np.ndarray:
    """Sum of ``weight`` over each vertex and all its ancestors, by pointer jumping."""
    acc = weight.astype(np.int64, copy=True)
    jump = parent.copy()
    idx = np.flatnonzero(jump >= 0)
    while len(idx):
        up = jump[idx]
        acc[idx] += acc[up]
        up = jump[up]
        jump[idx] = up
        idx = idx[up >= 0]
    return acc


def phase1_filter_edges(story: GraphStory) -> tuple[np.ndarray, np.ndarray]:
    """Split the edges into those joining buckets at most one apart and the rest."""
    e = story.edges
    b = story.bucket_index
    far = np.abs(b[e[:, 0]] - b[e[:, 1]]) > 1
    return e[~far], e[far]


def phase2_add_dummy_edges(n: int, forest_edges: np.ndarray, window: int) -> tuple[np.ndarray, np.ndarray]:
    """Reconnect a forest into a spanning tree without joining non-adjacent buckets.

    The component of vertex 0 grows bucket by bucket: the first vertex of the
    next uncovered bucket is tied to the grown tree's representative of the
    bucket before it.  Once every bucket is covered, each remaining component
    is tied by its first vertex to the representative of that vertex's bucket.
    Representatives are the first vertex of each bucket within the component
    that covered the bucket first.
    """
    if n == 0:
        return forest_edges, EMPTY_EDGES
    count, label = component_labels(n, forest_edges)
    if count == 1:
        return forest_edges, EMPTY_EDGES
    b = _bucket(n, window)
    h = int(b[-1]) + 1
    # per (component, bucket): first vertex; a component's buckets are contiguous
    keys, first = np.unique(label.astype(np.int64) * h + b, return_index=True)
    comp_of_key = keys // h
    bucket_of_key = keys % h
    key_start = np.searchsorted(comp_of_key, np.arange(count + 1))
    comp_hi = bucket_of_key[key_start[1:] - 1]
    # the next uncovered bucket's component always reaches past the current top
    bucket_start = np.arange(0, n, window)
    next_top = comp_hi[label[bucket_start]].tolist()
    top = next_top[0]
    links: list[int] = []
    while top < h - 1:
        links.append(top)
        top = next_top[top + 1]
    chain = np.array(links, dtype=np.int64)
    grown = np.r_[label[0], label[bucket_start[chain + 1]]]

    stage = np.full(count, len(grown), dtype=np.int64)
    stage[grown] = np.arange(len(grown))
    mine = stage[comp_of_key] < len(grown)
    k_b, k_stage, k_first = bucket_of_key[mine], stage[comp_of_key[mine]], first[mine]
    o = argsort_by(k_b, k_stage)
    lead = np.r_[True, k_b[o][1:] != k_b[o][:-1]]
    rep = np.empty(h, dtype=np.int64)
    rep[k_b[o][lead]] = k_first[o][lead]

    chain_edges = np.stack([rep[chain], (chain + 1) * window], axis=1)
    _, comp_first = np.unique(label, return_index=True)
    merged = np.zeros(count, dtype=bool)
    merged[grown] = True
    rest = np.sort(comp_first[~merged])
    extra = np.stack([rep[b[rest]], rest], axis=1)
    dummy = np.concatenate([chain_edges, extra])
    return np.concatenate([forest_edges, dummy]), dummy


def phase3_decompose(n: int, tree_edges: np.ndarray, window: int, root: int = 0) -> Decomposition:
    """Pertinent components of the tree rooted at ``root``, layered into sets ``R_j``.

    ``j`` of a component is one plus the number of component boundaries
    between it and the root, i.e. the number of component roots among a
    vertex's ancestors (itself included).
    """
    b = _bucket(n, window)
    if n == 1:
        one = np.ones(1, dtype=np.int64)
        zero = np.zeros(1, dtype=np.int64)
        return Decomposition(np.array([-1]), zero, zero, zero, one, one, window)
    order, pred = breadth_first_order(adjacency(n, tree_edges), root, directed=True, return_predecessors=True)
    if len(order) != n:
        raise NotATree("edges do not span all vertices")
    parent = pred.astype(np.int64)
    parent[root] = -1
    same = b[tree_edges[:, 0]] == b[tree_edges[:, 1]]
    count, label = component_labels(n, tree_edges[same])

    is_root = np.ones(n, dtype=bool)
    nonroot = parent >= 0
    is_root[nonroot] = label[parent[nonroot]] != label[nonroot]
    roots = np.flatnonzero(is_root)
    # both counts in one word: ancestors in the low half, component roots above
    sums = _ancestor_sums(parent, 1 + (is_root.astype(np.int64) << 32))
    depth = (sums & 0xFFFFFFFF) - 1
    set_of_label = np.empty(count, dtype=np.int64)
    set_of_label[label[roots]] = sums[roots] >> 32
    root_of_label = np.empty(count, dtype=np.int64)
    root_of_label[label[roots]] = roots

    rank = argsort_by(set_of_label, root_of_label)
    new_id = np.empty(count, dtype=np.int64)
    new_id[rank] = np.arange(count)
    comp_root = root_of_label[rank]
    return Decomposition(
        parent, depth, new_id[label], comp_root, set_of_label[rank], b[comp_root] + 1, window
    )


def _dfs_ranks(n: int, root: int, child_start: np.ndarray, child_list: np.ndarray) -> np.ndarray:
    """Pre-order rank of every vertex, children visited in stored order."""
    # float data: other dtypes get converted, which sorts the child lists
    g = csr_matrix((np.ones(len(child_list)), child_list, child_start), shape=(n, n))
    order = depth_first_order(g, root, directed=True, return_predecessors=False)
    ranks = np.empty(n, dtype=np.int64)
    ranks[order] = np.arange(n)
    return ranks


def phase4_order_children(dec: Decomposition) -> OrderedTree:
    """Same-set children first, then next-set children; ascending tau within each group."""
    n = dec.n
    parent, component = dec.parent, dec.component
    kids = np.flatnonzero(parent >= 0)
    par = parent[kids]
    other = component[kids] != component[par]
    order = argsort_by(par, other, kids)
    child_list = kids[order]
    child_start = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(par, minlength=n), out=child_start[1:])
    same_count = np.bincount(par[~other], minlength=n)
    root = int(np.flatnonzero(parent < 0)[0])
    pre = _dfs_ranks(n, root, child_start, child_list)
    # children reversed: mirror pre-order, which is post-order read backwards
    seg = np.repeat(np.arange(n), np.diff(child_start))
    mirrored = child_list[child_start[seg] + child_start[seg + 1] - 1 - np.arange(len(child_list))]
    post = n - 1 - _dfs_ranks(n, root, child_start, mirrored)
    return OrderedTree(root, child_start, child_list, same_count, pre, post)


def phase5_build_forests(dec: Decomposition, tree: OrderedTree) -> ForestAssignment:
    """Forests ``F_{i.q}``: components ordered by set index, then by pre-order of their roots."""
    child_list = tree.child_list.tolist()
    start = tree.child_start.tolist()
    same = tree.same_count.tolist()
    comps = dec.components
    children = {}
    for v, k in enumerate(same):
        if k:
            children[v] = tuple(child_list[start[v] : start[v] + k])
    pre = tree.pre
    by_root = argsort_by(dec.comp_set, pre[dec.comp_root]).tolist()
    grouped: dict[tuple[int, Quadrant], list[int]] = {}
    for c in by_root:
        comp = comps[c]
        grouped.setdefault((comp.bucket, quadrant_for_set(comp.set_index)), []).append(c)
    forests = {}
    for key, cs in grouped.items():
        kids = {v: children[v] for c in cs for v in comps[c].vertices if v in children}
        forests[key] = OrderedForest(tuple(comps[c].root for c in cs), kids)
    return ForestAssignment(forests, {k: tuple(v) for k, v in grouped.items()})


# rotation matrices indexed by j mod 4
_ROTATION = np.array(
    [
        [[0, -1], [1, 0]],  # Q2
        [[1, 0], [0, 1]],  # Q1
        [[0, 1], [-1, 0]],  # Q4
        [[-1, 0], [0, -1]],  # Q3
    ],
    dtype=np.int64,
)


def phase5_coordinates(dec: Decomposition, tree: OrderedTree) -> np.ndarray:
    """All forests drawn at once.

    Within a forest, a Q1 drawing visits vertices in mirrored pre-order, that
    is post-order backwards, so a vertex with forest post-order rank ``p`` in a
    forest of ``m`` vertices sits at ``y = 4W - 2(m - 1 - p)``; ``x`` is its
    depth inside its component.
    """
    n, w = dec.n, dec.window
    comp = dec.component
    croot = dec.comp_root[comp]
    j = dec.comp_set[comp]
    q = j % 4
    key = dec.comp_bucket[comp] * 4 + q
    order = argsort_by(key, j, tree.pre[croot], tree.post)
    k = key[order]
    starts = np.flatnonzero(np.r_[True, k[1:] != k[:-1]])
    sizes = np.diff(np.r_[starts, n])
    if sizes.max() > w:
        raise ForestTooLarge(f"a forest has {sizes.max()} > W={w} vertices")
    rank = np.empty(n, dtype=np.int64)
    rank[order] = np.arange(n) - np.repeat(starts, sizes)
    size = np.empty(n, dtype=np.int64)
    size[order] = np.repeat(sizes, sizes)
    q1 = np.stack([dec.depth - dec.depth[croot], 4 * w - 2 * (size - 1 - rank)], axis=1)
    return np.einsum("nij,nj->ni", _ROTATION[q], q1)


def build_tree_layout(story: GraphStory, per_forest: bool = False) -> TreeLayout:
    """Run the five phases.

    ``per_forest`` draws each forest separately with :func:`draw_quadrant`
    instead of computing all coordinates in one vectorized pass.
    """
    if story.kind is not StoryKind.TREE:
        raise NotATree(f"story kind is {story.kind.value}, not tree")
    n, w = story.n, story.window
    kept, removed = phase1_filter_edges(story)
    tree_edges, dummy = phase2_add_dummy_edges(n, kept, w)
    dec = phase3_decompose(n, tree_edges, w)
    ordered = phase4_order_children(dec)
    grid = GridBox(-4 * w, 4 * w, -4 * w, 4 * w)
    if not per_forest:
        drawing = DrawingStory(story, phase5_coordinates(dec, ordered), grid)
        return TreeLayout(drawing, removed, dummy, dec, ordered)
    assignment = phase5_build_forests(dec, ordered)
    xy = np.empty((n, 2), dtype=np.int64)
    for (_, q), forest in assignment.forests.items():
        pos = draw_quadrant(forest, w, q)
        xy[list(pos)] = list(pos.values())
    layout = TreeLayout(DrawingStory(story, xy, grid), removed, dummy, dec, ordered)
    layout.__dict__["assignment"] = assignment
    return layout


def layout_tree(story: GraphStory) -> DrawingStory:
    """Planar straight-line drawing story on the ``[-4W, 4W]^2`` grid."""
    return build_tree_layout(story).drawing
