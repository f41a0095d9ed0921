"""``gstory`` command line: gen, layout, verify, render, bench.

Exit codes: 0 success, 1 violations found, 2 unparsable input, 3 story of the
wrong kind for the requested algorithm, 4 file system errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .core import GraphStoryError, MissingPosition, NotAPath, NotATree, StoryKind
from .generate import TauMode, TreeShape, gen_nested_triangles, gen_path, gen_tree
from .io import ParseError, dumps_layout, dumps_story, load_drawing, read_story
from .path_layout import layout_path
from .tree_layout import build_tree_layout

EXIT_OK, EXIT_VIOLATIONS, EXIT_PARSE, EXIT_KIND, EXIT_IO = 0, 1, 2, 3, 4


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _seed(args: argparse.Namespace) -> int:
    env = os.environ.get("GSTORY_SEED")
    return int(env) if env not in (None, "") else args.seed


def cmd_gen(args: argparse.Namespace) -> int:
    seed = _seed(args)
    if args.family == "path":
        story = gen_path(args.n, args.window, args.tau, seed)
    elif args.family == "tree":
        story = gen_tree(args.n, args.window, seed, args.shape)
    else:
        window = args.window if args.window is not None else 9
        if window != 9:
            print("warning: nested triangles with W != 9 fall outside the lower-bound setting", file=sys.stderr)
        story = gen_nested_triangles(args.n, window)
    _write(dumps_story(story), args.out)
    return EXIT_OK


def cmd_layout(args: argparse.Namespace) -> int:
    story = read_story(args.story)
    algo = args.algo
    if algo == "auto":
        if story.kind is StoryKind.PATH:
            algo = "path"
        elif story.kind is StoryKind.TREE:
            algo = "tree"
        else:
            raise NotATree("auto layout needs a path or tree story")
    removed = None
    if algo == "path":
        if story.kind is not StoryKind.PATH:
            raise NotAPath(f"story kind is {story.kind.value}, not path")
        drawing = layout_path(story)
    else:
        if story.kind is not StoryKind.TREE:
            raise NotATree(f"story kind is {story.kind.value}, not tree")
        result = build_tree_layout(story)
        drawing = result.drawing
        removed = result.removed_edges
        if args.dump:
            _write(json.dumps(result.dump(), separators=(",", ":")) + "\n", args.dump)
    _write(dumps_layout(drawing), args.out)
    g = drawing.grid
    h = -(-story.n // story.window)
    info = f"n={story.n} W={story.window} h={h} grid=[{g.xmin},{g.xmax}]x[{g.ymin},{g.ymax}] ({g.width}x{g.height})"
    if removed is not None:
        ids = story.ids
        info += f" removed_edges={len(removed)}"
        for u, v in removed.tolist():
            info += f"\n  removed {ids[u]}-{ids[v]}"
    print(info, file=sys.stderr if args.out in (None, "-") else sys.stdout)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    from .verify import (
        check_bucket_pair_planarity,
        check_frame_planarity,
        check_grid_bounds,
        check_induced_planarity,
        check_position_stability,
    )

    drawing, layout = load_drawing(args.story, args.layout)
    report = check_frame_planarity(drawing, exhaustive=args.exhaustive)
    if drawing.grid is not None:
        report = report.merge(check_grid_bounds(drawing, drawing.grid))
    report = report.merge(check_position_stability(layout.frames if layout.frames else drawing))
    if args.induced:
        report = report.merge(check_induced_planarity(drawing))
    if args.bucket_pairs:
        report = report.merge(check_bucket_pair_planarity(drawing))
    for v in report.violations:
        print(json.dumps(v.to_json(), separators=(",", ":")))
    status = "pass" if report.passed else "FAIL"
    print(
        f"{status}: {len(report.violations)} violations, {report.checked_frames} frames, "
        f"{report.checked_edge_pairs} edge pairs",
        file=sys.stderr,
    )
    return EXIT_OK if report.passed else EXIT_VIOLATIONS


def cmd_render(args: argparse.Namespace) -> int:
    from .render import render_story

    drawing, _ = load_drawing(args.story, args.layout)
    paths = render_story(drawing, args.out_dir, args.scale, args.margin, args.grid)
    print(f"wrote {len(paths)} frames to {args.out_dir}", file=sys.stderr)
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    from .bench import format_table, run_bench

    rows = run_bench(args.family, args.sizes, args.window, _seed(args), args.repeats)
    sys.stdout.write(format_table(args.family, args.window, rows))
    return EXIT_OK


def _sizes(text: str) -> list[int]:
    try:
        return [int(float(s)) for s in text.split(",") if s]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gstory", description="Planar drawings of windowed graph stories.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a generated story file")
    g.add_argument("--family", choices=["path", "tree", "nested"], required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--window", type=int, default=None)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--shape", choices=[s.value for s in TreeShape], default=TreeShape.UNIFORM_ATTACH.value)
    g.add_argument("--tau", choices=[m.value for m in TauMode], default=TauMode.IDENTITY.value)
    g.add_argument("-o", "--out", default=None)
    g.set_defaults(func=cmd_gen)

    lay = sub.add_parser("layout", help="compute a drawing story")
    lay.add_argument("story")
    lay.add_argument("--algo", choices=["auto", "path", "tree"], default="auto")
    lay.add_argument("-o", "--out", default=None)
    lay.add_argument("--dump", default=None, help="write the tree decomposition (JSON) here")
    lay.set_defaults(func=cmd_layout)

    ver = sub.add_parser("verify", help="check a layout against its story")
    ver.add_argument("story")
    ver.add_argument("layout")
    ver.add_argument("--induced", action="store_true", help="also check the whole graph at once")
    ver.add_argument("--bucket-pairs", action="store_true", help="also check each union of two consecutive buckets")
    ver.add_argument("--exhaustive", action="store_true", help="test every pair of every frame")
    ver.set_defaults(func=cmd_verify)

    ren = sub.add_parser("render", help="write one SVG per frame")
    ren.add_argument("layout")
    ren.add_argument("story")
    ren.add_argument("out_dir")
    ren.add_argument("--scale", type=float, default=20.0)
    ren.add_argument("--margin", type=float, default=1.0)
    ren.add_argument("--grid", action="store_true", help="draw grid dots")
    ren.set_defaults(func=cmd_render)

    ben = sub.add_parser("bench", help="time the layout algorithms")
    ben.add_argument("--family", choices=["path", "tree"], required=True)
    ben.add_argument("--sizes", type=_sizes, default=[200_000, 400_000, 800_000])
    ben.add_argument("--window", type=int, default=16)
    ben.add_argument("--seed", type=int, default=0)
    ben.add_argument("--repeats", type=int, default=3)
    ben.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "gen" and args.window is None and args.family != "nested":
        parser.error("--window is required for path and tree stories")
    try:
        return args.func(args)
    except (NotAPath, NotATree) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_KIND
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ParseError, MissingPosition, GraphStoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
