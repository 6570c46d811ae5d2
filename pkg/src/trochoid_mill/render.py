"""Deterministic SVG and CSV output for traces.

SVG output sticks to a tiny 1.1 subset (svg, g, path with M/L segments
only); curve fidelity is the sampler's job.  The same input always
produces byte-identical text, so golden tests can diff documents
directly.  CSV is full-precision (round-trips through float()).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple, Union

from trochoid_mill.kinematics import Rig
from trochoid_mill.linear import LinearRig
from trochoid_mill.traces import Trace
from trochoid_mill.wire import linear_rig_to_wire, rig_to_wire

DEFAULT_PALETTE: Tuple[str, ...] = (
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
)


@dataclass(frozen=True)
class RenderStyle:
    stroke_width: float = 1.5
    palette: Tuple[str, ...] = DEFAULT_PALETTE
    margin: float = 10.0
    flip_y: bool = True

    def __post_init__(self) -> None:
        if not self.stroke_width > 0:
            raise ValueError(f"stroke_width must be positive, got {self.stroke_width}")
        palette = tuple(self.palette)
        if not palette:
            raise ValueError("palette must be nonempty")
        object.__setattr__(self, "palette", palette)
        if self.margin < 0:
            raise ValueError(f"margin must be >= 0, got {self.margin}")


def _fmt(value: float) -> str:
    return f"{value:.6f}"


def polyline_path_data(points: Sequence[Tuple[float, float]], flip_y: bool) -> str:
    """Path data 'M x,y L x,y ...' with coordinates fixed to 6 decimals."""
    sign = -1.0 if flip_y else 1.0
    parts = []
    for i, (x, y) in enumerate(points):
        cmd = "M" if i == 0 else "L"
        parts.append(f"{cmd} {_fmt(x)},{_fmt(sign * y)}")
    return " ".join(parts)


def _svg_document(point_lists: Sequence[Sequence[Tuple[float, float]]], style: RenderStyle) -> str:
    sign = -1.0 if style.flip_y else 1.0
    flat = [(float(x), sign * float(y)) for points in point_lists for x, y in points]
    if flat:
        min_x = min(x for x, _ in flat)
        max_x = max(x for x, _ in flat)
        min_y = min(y for _, y in flat)
        max_y = max(y for _, y in flat)
    else:
        min_x = max_x = min_y = max_y = 0.0
    x0 = min_x - style.margin
    y0 = min_y - style.margin
    width = (max_x - min_x) + 2 * style.margin
    height = (max_y - min_y) + 2 * style.margin

    lines: List[str] = []
    lines.append(
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_fmt(x0)} {_fmt(y0)} {_fmt(width)} {_fmt(height)}">'
    )
    lines.append(
        f'<g fill="none" stroke-width="{_fmt(style.stroke_width)}" '
        'stroke-linecap="round" stroke-linejoin="round">'
    )
    for i, points in enumerate(point_lists):
        color = style.palette[i % len(style.palette)]
        d = polyline_path_data(points, style.flip_y)
        lines.append(f'<path stroke="{color}" d="{d}"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def to_svg(traces: Sequence[Trace], style: RenderStyle = RenderStyle()) -> str:
    """One path per trace, palette cycled in order, shared viewBox plus margin."""
    traces = list(traces)
    if not traces:
        raise ValueError("nothing to render: empty trace list")
    frames = {trace.frame for trace in traces}
    if len(frames) > 1:
        raise ValueError("cannot mix frames in one document")
    return _svg_document([list(zip(trace.xs, trace.ys)) for trace in traces], style)


def polylines_to_svg(
    point_lists: Sequence[Sequence[Tuple[float, float]]], style: RenderStyle = RenderStyle()
) -> str:
    """Render bare polylines (e.g. a live session's pen segments); may be empty."""
    return _svg_document(list(point_lists), style)


def _csv_cell(value: float) -> str:
    # shortest text that reads back to the exact same float; integral values
    # drop the trailing ".0" so a cycloid row reads "0,0,20"
    if value.is_integer():
        return str(int(value))
    return repr(value)


def to_csv(trace: Trace) -> str:
    """Header 't,x,y' then one full-precision row per sample."""
    rows = ["t,x,y"]
    for t, p in trace.samples:
        rows.append(f"{_csv_cell(t)},{_csv_cell(p.x)},{_csv_cell(p.y)}")
    return "\n".join(rows) + "\n"


def trace_metadata(trace: Trace) -> Dict[str, Any]:
    rig: Union[Rig, LinearRig] = trace.rig_snapshot
    if isinstance(rig, Rig):
        rig_data: Dict[str, Any] = {"kind": "turntable", **rig_to_wire(rig)}
    else:
        rig_data = {"kind": "linear", **linear_rig_to_wire(rig)}
    return {
        "frame": trace.frame.value,
        "closed": trace.closed,
        "samples": len(trace),
        "rig": rig_data,
    }


def write_trace_csv(trace: Trace, path: Union[str, Path]) -> Path:
    """Write the CSV and a .meta.json sidecar carrying rig and frame."""
    csv_path = Path(path)
    csv_path.write_text(to_csv(trace), encoding="utf-8")
    sidecar = csv_path.with_suffix(".meta.json")
    sidecar.write_text(
        json.dumps(trace_metadata(trace), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return csv_path


def write_svg(traces: Sequence[Trace], path: Union[str, Path], style: RenderStyle = RenderStyle()) -> None:
    Path(path).write_text(to_svg(traces, style), encoding="utf-8")
