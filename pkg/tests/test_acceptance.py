"""Exit criteria on the full corpora.

Each test appends one ``criterion N: PASS|FAIL ...`` line to
``conftest.ACCEPTANCE_LINES``; the lines are echoed in the terminal summary.
Timed regions cover the operation under test, not corpus generation.
"""

from __future__ import annotations

import subprocess
import sys
import time

import numpy as np
import pytest

import conftest
import oracles
from gstory.cli import main as cli_main
from gstory.core import DrawingStory, GraphStory
from gstory.forest_drawer import OrderedForest, Quadrant, draw_q1, draw_quadrant
from gstory.generate import concentric_layout, gen_nested_triangles, gen_path, gen_tree, random_forest
from gstory.io import dumps_layout, dumps_story, loads_layout, loads_story
from gstory.path_layout import layout_path
from gstory.tree_layout import layout_tree
from gstory.verify import (
    check_bucket_pair_planarity,
    check_definition1,
    check_frame_planarity,
    check_induced_planarity,
)

pytestmark = pytest.mark.acceptance

STORIES_PER_CELL = 200
WINDOWS = (1, 2, 3, 5, 8, 16)
PATH_SIZES = (10, 100, 1000, 10000)
TREE_SIZES = (10, 100, 1000, 5000)
SHAPES = ("uniformAttach", "caterpillar", "star")

_corpus: dict[str, list[DrawingStory]] = {}


def record(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)


def path_corpus():
    # even seeds shuffle tau uniformly, odd seeds keep it near path order
    for n in PATH_SIZES:
        for w in WINDOWS:
            for seed in range(STORIES_PER_CELL):
                yield gen_path(n, w, "shuffled" if seed % 2 == 0 else "local", seed)


def tree_corpus():
    for n in TREE_SIZES:
        for w in WINDOWS:
            for shape in SHAPES:
                for seed in range(STORIES_PER_CELL):
                    yield gen_tree(n, w, seed, shape)


def in_bounds(d: DrawingStory, lo: int, hi: int) -> bool:
    return d.story.n == 0 or (int(d.xy.min()) >= lo and int(d.xy.max()) <= hi)


def laid_out(name: str, corpus, layout):
    if name not in _corpus:
        stories = list(corpus())
        _corpus[name] = [layout(s) for s in stories]
    return _corpus[name]


def test_criterion_1_path_grid_bound():
    stories = list(path_corpus())
    t0 = time.perf_counter()
    drawings = [layout_path(s) for s in stories]
    bad = sum(not in_bounds(d, 1, 2 * d.story.window) for d in drawings)
    elapsed = time.perf_counter() - t0
    _corpus["path"] = drawings
    ok = bad == 0 and elapsed < 10
    record(1, ok, f"{len(drawings)} path stories, {bad} out of [1,2W], {elapsed:.1f}s (limit 10s)")
    assert bad == 0
    assert elapsed < 10


def test_criterion_2_path_frame_planarity():
    drawings = laid_out("path", path_corpus, layout_path)
    t0 = time.perf_counter()
    frames = violations = 0
    for d in drawings:
        rep = check_frame_planarity(d)
        frames += rep.checked_frames
        violations += len(rep.violations)
    elapsed = time.perf_counter() - t0
    del _corpus["path"]
    ok = violations == 0 and elapsed < 60
    record(2, ok, f"{frames} frames, {violations} violations, {elapsed:.1f}s (limit 60s)")
    assert violations == 0
    assert elapsed < 60


def test_criterion_3_tree_grid_bound():
    stories = list(tree_corpus())
    t0 = time.perf_counter()
    drawings = [layout_tree(s) for s in stories]
    bad = sum(not in_bounds(d, -4 * d.story.window, 4 * d.story.window) for d in drawings)
    elapsed = time.perf_counter() - t0
    _corpus["tree"] = drawings
    ok = bad == 0 and elapsed < 60
    record(3, ok, f"{len(drawings)} tree stories, {bad} out of [-4W,4W], {elapsed:.1f}s (limit 60s)")
    assert bad == 0
    assert elapsed < 60


def test_criterion_4_tree_frame_and_bucket_pair_planarity():
    drawings = laid_out("tree", tree_corpus, layout_tree)
    t0 = time.perf_counter()
    frames = frame_bad = pair_bad = 0
    for d in drawings:
        rep = check_frame_planarity(d)
        frames += rep.checked_frames
        frame_bad += len(rep.violations)
        pair_bad += len(check_bucket_pair_planarity(d).violations)
    elapsed = time.perf_counter() - t0
    del _corpus["tree"]
    ok = frame_bad == 0 and pair_bad == 0 and elapsed < 300
    record(
        4, ok,
        f"{frames} frames, {frame_bad} frame / {pair_bad} bucket-pair violations, {elapsed:.1f}s (limit 300s)",
    )
    assert frame_bad == 0 and pair_bad == 0
    assert elapsed < 300


def _rotate_oracle(q: Quadrant, p):
    # clockwise quarter turns as explicit matrices
    turns = {Quadrant.Q1: 0, Quadrant.Q4: 1, Quadrant.Q3: 2, Quadrant.Q2: 3}[q]
    m = np.linalg.matrix_power(np.array([[0, 1], [-1, 0]]), turns)
    return tuple(int(c) for c in m @ np.array(p))


def test_criterion_5_definition1_conformance():
    rng = np.random.default_rng(2024)
    t0 = time.perf_counter()
    failures = 0
    for _ in range(1000):
        w = int(rng.integers(1, 13))
        m = int(rng.integers(1, w + 1))
        f = random_forest(m, rng)
        pos = draw_q1(f, w)
        if not check_definition1(f.roots, f.children, pos, w).passed:
            failures += 1
        if pos != oracles.recursive_q1(f.roots, f.children, w):
            failures += 1
        for q in Quadrant:
            got = draw_quadrant(f, w, q)
            if any(got[v] != _rotate_oracle(q, p) for v, p in pos.items()):
                failures += 1
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < 30
    record(5, ok, f"1000 forests, {failures} failures, {elapsed:.1f}s (limit 30s)")
    assert failures == 0
    assert elapsed < 30


def test_criterion_6_worked_examples():
    path = layout_path(gen_path(4, 2)).positions
    forest = draw_q1(OrderedForest(("r",), {"r": ("a", "b")}), 3)
    tree = layout_tree(GraphStory.build(
        ["v1", "v2", "v3", "v4"], [1, 2, 3, 4], [("v1", "v2"), ("v2", "v3"), ("v3", "v4")], 2, "tree"
    )).positions
    checks = [
        path == {"v1": (1, 1), "v2": (2, 2), "v3": (1, 3), "v4": (2, 4)},
        forest == {"r": (0, 12), "a": (1, 8), "b": (1, 10)},
        tree == {"v1": (0, 8), "v2": (1, 6), "v3": (8, 0), "v4": (6, -1)},
    ]
    record(6, all(checks), f"path/forest/tree examples match: {checks}")
    assert all(checks)


def _bench_ratios(family: str) -> list[float]:
    # a fresh process, so the timings do not inherit the heap of the corpora above
    out = subprocess.run(
        [sys.executable, "-m", "gstory", "bench", "--family", family,
         "--sizes", "200000,400000,800000", "--window", "16", "--repeats", "5"],
        capture_output=True, text=True, check=True,
    ).stdout
    return [float(line.split()[2]) for line in out.splitlines()[3:]]


def test_criterion_7_linearity():
    ratios = {family: _bench_ratios(family) for family in ("path", "tree")}
    worst = max(max(v) for v in ratios.values())
    text = ", ".join(f"{k} {' '.join(f'{r:.2f}' for r in v)}" for k, v in ratios.items())
    record(7, worst <= 2.5, f"time ratios {text} (limit 2.5)")
    assert worst <= 2.5


def test_criterion_8_lower_bound_demonstrator():
    sides = {}
    ok = True
    for n in (9, 30, 90, 300):
        d = concentric_layout(gen_nested_triangles(n))
        ok &= check_frame_planarity(d).passed and check_induced_planarity(d).passed
        box = d.bounding_box()
        sides[n] = max(box.width, box.height)
    growth = sides[300] / sides[30]
    ok &= growth >= 5
    record(8, ok, f"sides {sides}, side(300)/side(30) = {growth:.2f} (need >= 5)")
    assert ok


def _random_small_drawing(rng: np.random.Generator) -> DrawingStory:
    n = int(rng.integers(1, 16))
    w = int(rng.integers(1, 13))
    ids = [f"p{k}" for k in range(n)]
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    m = int(rng.integers(0, min(len(pairs), 3 * n) + 1))
    chosen = rng.choice(len(pairs), size=m, replace=False) if m else []
    edges = [(ids[pairs[k][0]], ids[pairs[k][1]]) for k in chosen]
    story = GraphStory.build(ids, rng.permutation(n) + 1, edges, w)
    xy = rng.integers(0, 5, size=(n, 2))
    return DrawingStory(story, xy)


def test_criterion_9_oracle_cross_check():
    rng = np.random.default_rng(99)
    frames = stories = disagreements = found = 0
    while frames < 1000:
        d = _random_small_drawing(rng)
        s = d.story
        expected = oracles.rational_frame_violations(s.ids, s.tau, s.edge_list, s.window, d.positions)
        got = oracles.violation_set(check_frame_planarity(d).violations)
        disagreements += got != expected
        found += len(expected)
        frames += s.frame_count
        stories += 1
    record(
        9, disagreements == 0,
        f"{frames} frames in {stories} stories (<= 12 vertices each), {found} oracle violations, "
        f"{disagreements} disagreements",
    )
    assert disagreements == 0


def _cli_corpus(root):
    root.mkdir()
    jobs = []
    for n in (10, 100, 1000):
        for w in WINDOWS:
            for seed in (0, 1):
                tau = "shuffled" if seed == 0 else "local"
                jobs.append((f"path_{n}_{w}_{seed}", ["--family", "path", "--n", n, "--window", w,
                                                       "--tau", tau, "--seed", seed]))
                for shape in SHAPES:
                    jobs.append((f"tree_{shape}_{n}_{w}_{seed}", ["--family", "tree", "--n", n, "--window", w,
                                                                  "--shape", shape, "--seed", seed]))
    for n in (9, 30, 90, 300):
        jobs.append((f"nested_{n}", ["--family", "nested", "--n", n]))
    status = 0
    for name, args in jobs:
        story = root / f"{name}.story.json"
        status |= cli_main(["gen", *map(str, args), "-o", str(story)])
        if not name.startswith("nested"):
            status |= cli_main(["layout", str(story), "-o", str(root / f"{name}.layout.json")])
        else:
            (root / f"{name}.layout.json").write_text(dumps_layout(concentric_layout(loads_story(story.read_text()))))
    return status, sorted(p.name for p in root.iterdir())


def test_criterion_10_round_trip_and_determinism(tmp_path, capsys):
    status_a, names = _cli_corpus(tmp_path / "a")
    status_b, names_b = _cli_corpus(tmp_path / "b")
    capsys.readouterr()
    rerun_diff = [n for n in names if (tmp_path / "a" / n).read_bytes() != (tmp_path / "b" / n).read_bytes()]
    trip_diff = []
    for name in names:
        text = (tmp_path / "a" / name).read_text()
        if name.endswith(".story.json"):
            s = loads_story(text)
            if dumps_story(s) != text or loads_story(dumps_story(s)) != s:
                trip_diff.append(name)
        else:
            lay = loads_layout(text)
            story = loads_story((tmp_path / "a" / name.replace(".layout.", ".story.")).read_text())
            d = lay.drawing(story)
            if dumps_layout(d) != text or loads_layout(dumps_layout(d)).drawing(story) != d:
                trip_diff.append(name)
    ok = status_a == 0 and status_b == 0 and names == names_b and not rerun_diff and not trip_diff
    record(
        10, ok,
        f"{len(names)} files, {len(trip_diff)} round-trip mismatches, {len(rerun_diff)} rerun byte differences",
    )
    assert ok
