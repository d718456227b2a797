"""Gantt charts (ASCII and SVG) and comparison tables."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Literal

from .engine import Timeline
from .metrics import ComparisonTable, RunSummary
from .workload import Ticks

GAP_FILL = {"idle": ".", "switch": "~"}

COLUMNS = ("algorithm", "time_quantum", "avg_tat", "avg_wt", "cs", "throughput", "makespan")
HEADINGS = ("Algorithm", "Time Quantum", "Avg TAT", "Avg WT", "CS", "Throughput", "Makespan")


class GanttSizeError(ValueError):
    def __init__(self, minimum: int, width: int):
        self.minimum = minimum
        super().__init__(f"width {width} too small, need at least {minimum}")


@dataclass(frozen=True)
class Segment:
    start: Ticks
    end: Ticks
    kind: Literal["slice", "idle", "switch"]
    pid: int | None = None
    round_index: int | None = None

    @property
    def label(self) -> str:
        return f"P{self.pid}" if self.kind == "slice" else ""


def segments(timeline: Timeline) -> list[Segment]:
    """Slices plus the gaps between them, in time order."""
    out: list[Segment] = []
    clock = Ticks(0)
    idle_starts = {start for start, _ in timeline.idle_periods}
    for s in timeline.slices:
        if s.start > clock:
            out.append(Segment(clock, s.start, "idle" if clock in idle_starts else "switch"))
        out.append(Segment(s.start, s.end, "slice", s.pid, s.round_index))
        clock = s.end
    return out


def boundaries(timeline: Timeline) -> list[Ticks]:
    segs = segments(timeline)
    return [segs[0].start] + [s.end for s in segs]


def _round_starts(segs: list[Segment]) -> dict[int, int]:
    """segment index -> round number, for segments that open a round."""
    marks = {}
    last = None
    for i, seg in enumerate(segs):
        if seg.kind == "slice" and seg.round_index != last:
            marks[i] = seg.round_index
            last = seg.round_index
    return marks


def render_ascii(timeline: Timeline, width: int = 80, show_rounds: bool = False) -> str:
    segs = segments(timeline)
    marks = _round_starts(segs) if show_rounds else {}
    minimum_inner = []
    for i, seg in enumerate(segs):
        need = max(1, len(str(seg.start)), len(seg.label))
        if i in marks:
            need = max(need, len(f"R{marks[i]}"))
        minimum_inner.append(need)
    fixed = len(segs) + 1
    minimum = fixed + sum(minimum_inner)
    if width < minimum:
        raise GanttSizeError(minimum, width)

    spare = width - minimum
    span = (timeline.makespan - segs[0].start).halves or 1
    inner = [m + spare * (seg.end - seg.start).halves // span for m, seg in zip(minimum_inner, segs)]

    bar, border = ["|"], ["+"]
    for seg, w in zip(segs, inner):
        fill = GAP_FILL.get(seg.kind, " ")
        text = seg.label.center(w, fill) if seg.label else fill * w
        bar.append(text + "|")
        border.append("-" * w + "+")
    bar_line = "".join(bar)
    border_line = "".join(border)

    tick_line = [" "] * (len(bar_line) + 8)
    round_line = [" "] * (len(bar_line) + 8)
    col = 0
    for i, (seg, w) in enumerate(zip(segs, inner)):
        _put(tick_line, col, str(seg.start))
        if i in marks:
            _put(round_line, col, f"R{marks[i]}")
        col += w + 1
    _put(tick_line, col, str(segs[-1].end))

    lines = []
    if show_rounds:
        lines.append("".join(round_line).rstrip())
    lines += [border_line, bar_line, border_line, "".join(tick_line).rstrip()]
    return "\n".join(lines) + "\n"


def _put(line: list[str], col: int, text: str) -> None:
    for k, ch in enumerate(text):
        line[col + k] = ch


def render_svg(
    timeline: Timeline,
    width: int = 800,
    show_rounds: bool = False,
    lanes: Literal["process", "single"] = "process",
) -> str:
    """SVG 1.1 Gantt chart; one lane per process unless ``lanes="single"``."""
    segs = segments(timeline)
    margin_left, margin_right = 50, 20
    minimum = margin_left + margin_right + len(segs)
    if width < minimum:
        raise GanttSizeError(minimum, width)

    pids = sorted({s.pid for s in timeline.slices})
    lane_of = {pid: (i if lanes == "process" else 0) for i, pid in enumerate(pids)}
    n_lanes = len(pids) if lanes == "process" else 1
    lane_h, top = 28, 30 if show_rounds else 12
    plot_w = width - margin_left - margin_right
    origin = segs[0].start
    span = (timeline.makespan - origin).halves or 1
    height = top + n_lanes * lane_h + 40

    def x(t: Ticks) -> float:
        return margin_left + plot_w * (t - origin).halves / span

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="monospace" font-size="11">',
        "<defs>"
        '<pattern id="idle-hatch" width="6" height="6" patternUnits="userSpaceOnUse">'
        '<path d="M0,6 L6,0" stroke="#999" stroke-width="1"/></pattern>'
        "</defs>",
    ]
    if lanes == "process":
        for pid in pids:
            y = top + lane_of[pid] * lane_h
            out.append(f'<text class="lane" x="{margin_left - 6}" y="{y + lane_h / 2 + 4:.1f}" text-anchor="end">P{pid}</text>')

    palette = ("#8ecae6", "#ffb703", "#90be6d", "#f28482", "#cdb4db", "#84a59d", "#f6bd60", "#a8dadc")
    for seg in segs:
        x0, x1 = x(seg.start), x(seg.end)
        w = max(x1 - x0, 1.0)
        if seg.kind == "slice":
            y = top + lane_of[seg.pid] * lane_h
            color = palette[pids.index(seg.pid) % len(palette)]
            out.append(
                f'<rect class="slice" x="{x0:.2f}" y="{y + 3}" width="{w:.2f}" height="{lane_h - 6}" '
                f'fill="{color}" stroke="#333"><title>P{seg.pid} [{seg.start}, {seg.end}] round {seg.round_index}</title></rect>'
            )
            out.append(
                f'<text class="label" x="{(x0 + x1) / 2:.2f}" y="{y + lane_h / 2 + 4:.1f}" text-anchor="middle">P{seg.pid}</text>'
            )
        else:
            fill = "url(#idle-hatch)" if seg.kind == "idle" else "#ddd"
            out.append(
                f'<rect class="{seg.kind}" x="{x0:.2f}" y="{top + 3}" width="{w:.2f}" '
                f'height="{n_lanes * lane_h - 6}" fill="{fill}" stroke="none"/>'
            )

    axis_y = top + n_lanes * lane_h
    out.append(f'<line x1="{margin_left}" y1="{axis_y}" x2="{margin_left + plot_w}" y2="{axis_y}" stroke="#333"/>')
    for t in boundaries(timeline):
        out.append(f'<line x1="{x(t):.2f}" y1="{axis_y}" x2="{x(t):.2f}" y2="{axis_y + 4}" stroke="#333"/>')
        out.append(f'<text class="tick" x="{x(t):.2f}" y="{axis_y + 16}" text-anchor="middle">{t}</text>')

    if show_rounds:
        for i, r in _round_starts(segs).items():
            xr = x(segs[i].start)
            out.append(
                f'<line class="round" x1="{xr:.2f}" y1="{top - 4}" x2="{xr:.2f}" y2="{axis_y}" '
                'stroke="#c00" stroke-dasharray="3,2"/>'
            )
            out.append(f'<text class="round" x="{xr + 2:.2f}" y="{top - 8}" fill="#c00">R{r}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_gantt(
    timeline: Timeline,
    style: Literal["ascii", "svg"] = "ascii",
    width: int | None = None,
    show_rounds: bool = False,
) -> str:
    if style == "ascii":
        return render_ascii(timeline, width or 80, show_rounds)
    if style == "svg":
        return render_svg(timeline, width or 800, show_rounds)
    raise ValueError(f"unknown gantt style {style!r}")


def render_comparison(table: ComparisonTable, format: Literal["plain", "markdown", "csv", "json"] = "plain") -> str:
    if not table.rows:
        raise ValueError("comparison table has no rows")
    cells = [row.display_cells() for row in table.rows]
    if format == "json":
        return json.dumps(cells, indent=2) + "\n"
    if format == "csv":
        buf = io.StringIO(newline="")
        writer = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\r\n")
        writer.writeheader()
        writer.writerows(cells)
        return buf.getvalue()
    grid = [list(HEADINGS)] + [[c[k] for k in COLUMNS] for c in cells]
    widths = [max(len(r[i]) for r in grid) for i in range(len(COLUMNS))]
    if format == "markdown":
        def line(r):
            return "| " + " | ".join(v.ljust(w) for v, w in zip(r, widths)) + " |"

        sep = "|" + "|".join("-" * (w + 2) for w in widths) + "|"
        return "\n".join([line(grid[0]), sep] + [line(r) for r in grid[1:]]) + "\n"
    if format == "plain":
        def line(r):
            return "  ".join(v.ljust(w) if i < 2 else v.rjust(w) for i, (v, w) in enumerate(zip(r, widths))).rstrip()

        return "\n".join(line(r) for r in grid) + "\n"
    raise ValueError(f"unknown table format {format!r}")


SUMMARY_FIELDS = (
    "pid", "completion", "turnaround", "waiting", "response",
    "avg_tat", "avg_wt", "cs", "throughput", "cpu_util", "makespan",
)


def render_summary(summary: RunSummary, format: Literal["plain", "markdown", "csv", "json"] = "plain") -> str:
    """One run: per-process rows followed by the aggregate figures."""
    doc = summary.to_dict()
    if format == "json":
        return json.dumps(doc, indent=2) + "\n"
    if format == "csv":
        buf = io.StringIO(newline="")
        writer = csv.DictWriter(buf, fieldnames=SUMMARY_FIELDS, lineterminator="\r\n")
        writer.writeheader()
        for p in doc["processes"]:
            writer.writerow({k: p[k] for k in SUMMARY_FIELDS[:5]})
        writer.writerow({"pid": "all", **{k: doc[k] for k in SUMMARY_FIELDS[5:]}})
        return buf.getvalue()

    head = ("PID", "CT", "TAT", "WT", "RT")
    grid = [head] + [
        tuple(str(p[k]) for k in SUMMARY_FIELDS[:5]) for p in doc["processes"]
    ]
    widths = [max(len(r[i]) for r in grid) for i in range(len(head))]
    if format == "markdown":
        lines = ["| " + " | ".join(v.rjust(w) for v, w in zip(r, widths)) + " |" for r in grid]
        lines.insert(1, "|" + "|".join("-" * (w + 2) for w in widths) + "|")
    elif format == "plain":
        lines = ["  ".join(v.rjust(w) for v, w in zip(r, widths)) for r in grid]
    else:
        raise ValueError(f"unknown summary format {format!r}")
    lines += [
        "",
        f"policy           {doc['algorithm']} ({doc['policy']})",
        f"time quantum     {doc['quanta']}",
        f"avg TAT          {doc['avg_tat']}",
        f"avg WT           {doc['avg_wt']}",
        f"avg response     {doc['avg_response']}",
        f"context switches {doc['cs']}",
        f"throughput       {doc['throughput']} ({doc['throughput_exact']})",
        f"cpu utilization  {doc['cpu_util']}%",
        f"total time       {doc['total_time']}",
        f"makespan         {doc['makespan']} (idle {doc['idle']})",
    ]
    crit = doc["criteria"]
    if crit is not None:
        lines.append(
            f"criteria         {crit['value']} (exact {crit['exact']}); "
            f"{crit['below_fraction']} of bursts below it, 80% rule {'met' if crit['passes_80'] else 'not met'}"
        )
    return "\n".join(lines) + "\n"
