"""One SVG document per frame.

Coordinates are flipped vertically (screen y grows downward).  Every frame
uses the same canvas, computed from the drawing's grid box, so frames line up
when flipped through.  Only story edges are drawn; repair edges never exist in
the story and removed edges are never live.
"""

from __future__ import annotations

from pathlib import Path
from xml.sax.saxutils import escape

from .core import DrawingStory, GridBox, frames


def _canvas(box: GridBox, scale: float, margin: float):
    width = (box.width - 1 + 2 * margin) * scale
    height = (box.height - 1 + 2 * margin) * scale

    def sx(x: int) -> float:
        return (x - box.xmin + margin) * scale

    def sy(y: int) -> float:
        return (box.ymax - y + margin) * scale

    return width, height, sx, sy


def _num(v: float) -> str:
    return f"{v:.2f}".rstrip("0").rstrip(".")


def render_frame(
    drawing: DrawingStory,
    live_vertices,
    live_edges,
    t: int,
    scale: float = 20.0,
    margin: float = 1.0,
    grid: bool = False,
) -> str:
    box = drawing.grid if drawing.grid is not None else drawing.bounding_box()
    width, height, sx, sy = _canvas(box, scale, margin)
    pos = drawing.positions
    tau = drawing.story.tau
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(width)}" height="{_num(height)}" '
        f'viewBox="0 0 {_num(width)} {_num(height)}">',
        f"<title>frame {t}</title>",
        f'<rect width="{_num(width)}" height="{_num(height)}" fill="white"/>',
    ]
    if grid:
        out.append('<g fill="#ccc">')
        for x in range(box.xmin, box.xmax + 1):
            for y in range(box.ymin, box.ymax + 1):
                out.append(f'<circle cx="{_num(sx(x))}" cy="{_num(sy(y))}" r="{_num(scale * 0.05)}"/>')
        out.append("</g>")
    out.append(f'<g stroke="black" stroke-width="{_num(scale * 0.08)}">')
    for u, v in live_edges:
        (x1, y1), (x2, y2) = pos[u], pos[v]
        out.append(f'<line x1="{_num(sx(x1))}" y1="{_num(sy(y1))}" x2="{_num(sx(x2))}" y2="{_num(sy(y2))}"/>')
    out.append("</g>")
    r = scale * 0.2
    out.append(f'<g font-family="sans-serif" font-size="{_num(scale * 0.4)}">')
    for v in live_vertices:
        x, y = pos[v]
        cx, cy = sx(x), sy(y)
        out.append(f'<circle cx="{_num(cx)}" cy="{_num(cy)}" r="{_num(r)}" fill="steelblue"/>')
        out.append(f'<text x="{_num(cx + r)}" y="{_num(cy - r)}">{escape(v)} ({tau[v]})</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_story(
    drawing: DrawingStory,
    out_dir: str | Path,
    scale: float = 20.0,
    margin: float = 1.0,
    grid: bool = False,
) -> list[Path]:
    """Write ``frame_0001.svg`` .. ``frame_{n+W-1}.svg``; returns the paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    digits = max(4, len(str(drawing.story.frame_count)))
    written = []
    for fr in frames(drawing.story):
        path = out / f"frame_{fr.t:0{digits}d}.svg"
        path.write_text(
            render_frame(drawing, fr.live_vertices, fr.live_edges, fr.t, scale, margin, grid), encoding="utf-8"
        )
        written.append(path)
    return written
