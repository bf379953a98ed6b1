"""Gantt charts as SVG or plain text; setups are drawn as grey blocks."""
from __future__ import annotations

from fractions import Fraction
from xml.sax.saxutils import escape

from .io import format_rational
from .model import Instance, Schedule, check_feasible

SETUP_FILL = "#a0a0a0"
JOB_FILL = "#ffffff"


def _blocks(instance: Instance, schedule: Schedule):
    """Per machine: list of (kind, label, start, end)."""
    out = []
    for row in schedule.timed(instance.setup):
        blocks = []
        for seg in row:
            blocks.append(("setup", "s", seg.setup_start, seg.start))
            blocks.append(("job", str(seg.job), seg.start, seg.finish))
        out.append(blocks)
    return out


def render_ascii(instance: Instance, schedule: Schedule) -> str:
    check_feasible(instance, schedule)
    lines = []
    for i, blocks in enumerate(_blocks(instance, schedule), start=1):
        cells = []
        for kind, label, a, b in blocks:
            name = "setup" if kind == "setup" else label
            cells.append(f"[{name} {format_rational(a)}-{format_rational(b)}]")
        rel = schedule.release(i - 1)
        head = f"M{i}" + (f" (from {format_rational(rel)})" if rel else "")
        lines.append(f"{head}: " + "".join(cells) if cells else f"{head}:")
    return "\n".join(lines) + "\n"


def _num(x: Fraction) -> str:
    # fixed precision keeps the bytes deterministic
    text = f"{float(x):.3f}".rstrip("0").rstrip(".")
    return text if text != "-0" else "0"


def render_svg(instance: Instance, schedule: Schedule, width: int = 800, row_height: int = 28) -> str:
    check_feasible(instance, schedule)
    rows = _blocks(instance, schedule)
    horizon = max([b[-1][3] for b in rows if b] + [max(schedule.releases or (0,)), Fraction(1)])
    left, top, gap = 40, 10, 6
    scale = Fraction(width - left - 10) / horizon
    height = top * 2 + len(rows) * (row_height + gap) + 20
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'font-family="sans-serif" font-size="11">',
    ]
    for i, blocks in enumerate(rows):
        y = top + i * (row_height + gap)
        out.append(f'<text x="4" y="{y + row_height * 2 // 3}">M{i + 1}</text>')
        rel = schedule.release(i)
        if rel:
            out.append(f'<rect class="release" x="{left}" y="{y}" width="{_num(rel * scale)}" '
                       f'height="{row_height}" fill="none" stroke="#cccccc" stroke-dasharray="3,2"/>')
        for kind, label, a, b in blocks:
            x, w = left + a * scale, (b - a) * scale
            fill = SETUP_FILL if kind == "setup" else JOB_FILL
            out.append(f'<rect class="{kind}" x="{_num(x)}" y="{y}" width="{_num(w)}" height="{row_height}" '
                       f'fill="{fill}" stroke="#000000"/>')
            if kind == "job":
                out.append(f'<text x="{_num(x + w / 2)}" y="{y + row_height * 2 // 3}" '
                           f'text-anchor="middle">{escape(label)}</text>')
    axis_y = top + len(rows) * (row_height + gap) + 12
    out.append(f'<text x="{left}" y="{axis_y}">0</text>')
    out.append(f'<text x="{_num(left + horizon * scale)}" y="{axis_y}" text-anchor="end">'
               f'{escape(format_rational(horizon))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_gantt(instance: Instance, schedule: Schedule, fmt: str = "ascii") -> str:
    if fmt == "ascii":
        return render_ascii(instance, schedule)
    if fmt == "svg":
        return render_svg(instance, schedule)
    raise ValueError(f"unknown format {fmt!r}")
