"""Wall-clock timing of the layout algorithms across story sizes."""

from __future__ import annotations

import time
from dataclasses import dataclass

from .generate import TauMode, TreeShape, gen_path, gen_tree
from .path_layout import layout_path
from .tree_layout import layout_tree


@dataclass(frozen=True)
class BenchRow:
    n: int
    seconds: float
    ratio: float | None


def _prepare(family: str, n: int, window: int, seed: int):
    if family == "path":
        return gen_path(n, window, TauMode.SHUFFLED, seed), layout_path
    if family == "tree":
        return gen_tree(n, window, seed, TreeShape.UNIFORM_ATTACH), layout_tree
    raise ValueError(f"cannot bench family {family!r}")


def _once(story, run) -> float:
    t0 = time.perf_counter()
    run(story)
    return time.perf_counter() - t0


def time_layout(family: str, n: int, window: int, seed: int = 0, repeats: int = 3) -> float:
    """Best of ``repeats`` runs of the layout alone (generation excluded)."""
    story, run = _prepare(family, n, window, seed)
    return min(_once(story, run) for _ in range(repeats))


def run_bench(family: str, sizes: list[int], window: int, seed: int = 0, repeats: int = 3) -> list[BenchRow]:
    rows: list[BenchRow] = []
    for n in sizes:
        sec = time_layout(family, n, window, seed, repeats)
        ratio = sec / rows[-1].seconds if rows and rows[-1].seconds > 0 else None
        rows.append(BenchRow(n, sec, ratio))
    return rows


def format_table(family: str, window: int, rows: list[BenchRow]) -> str:
    lines = [f"# family={family} W={window}", f"{'n':>10} {'seconds':>10} {'ratio':>7}"]
    for r in rows:
        ratio = "-" if r.ratio is None else f"{r.ratio:.2f}"
        lines.append(f"{r.n:>10} {r.seconds:>10.4f} {ratio:>7}")
    return "\n".join(lines) + "\n"
