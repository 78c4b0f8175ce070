"""SVG rendering of drawings and of benchmark scatter plots.

Purely cosmetic concerns live here.  Grid coordinates are scaled by a unit
size, the y axis is flipped to screen orientation, and bundle-member edges
that share a straight run with their representative are nudged sideways by
a small fraction of a unit so both lines stay visible.  The logical
coordinates are untouched.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from typing import Optional, Sequence

from .layout import Drawing, bundle_plan

STUB_OFFSET = 0.08


def _fmt(x: float) -> str:
    return f"{x:.2f}".rstrip("0").rstrip(".")


def drawing_to_svg(graph, shape, drawing: Drawing, unit: int = 40, margin: int = 30) -> str:
    xs = [p[0] for pts in drawing.polylines.values() for p in pts]
    ys = [p[1] for pts in drawing.polylines.values() for p in pts]
    x0, y0 = min(xs), min(ys)
    width = (max(xs) - x0) * unit + 2 * margin
    height = (max(ys) - y0) * unit + 2 * margin

    def px(p, dx=0.0, dy=0.0):
        x, y = p
        return (
            margin + (x - x0 + dx) * unit,
            height - margin - (y - y0 + dy) * unit,
        )

    svg = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        width=str(width),
        height=str(height),
        viewBox=f"0 0 {width} {height}",
    )
    plan = bundle_plan(graph, shape)
    offsets = {}
    for k, e in enumerate(plan.elbow_edges):
        offsets[e] = STUB_OFFSET * (1 + k % 3)
    for e, pts in sorted(drawing.polylines.items()):
        off = offsets.get(e, 0.0)
        coords = []
        for a, b in zip(pts, pts[1:]):
            dx, dy = (off, 0.0) if a[0] == b[0] else (0.0, off)
            if not coords:
                coords.append(px(a, dx, dy))
            coords.append(px(b, dx, dy))
        ET.SubElement(
            svg,
            "polyline",
            points=" ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in coords),
            fill="none",
            stroke="black",
            attrib={"stroke-width": "2"},
        )
    for v in range(graph.num_vertices):
        cx, cy = px(drawing.coords[v])
        dummy = graph.is_dummy(v)
        ET.SubElement(
            svg,
            "circle",
            cx=_fmt(cx),
            cy=_fmt(cy),
            r="4" if dummy else "8",
            fill="white" if dummy else "#4477aa",
            stroke="black",
        )
        if not dummy:
            label = ET.SubElement(
                svg,
                "text",
                x=_fmt(cx),
                y=_fmt(cy + 4),
                attrib={"text-anchor": "middle", "font-size": "10", "font-family": "sans-serif"},
            )
            label.text = str(v)
    return ET.tostring(svg, encoding="unicode") + "\n"


def scatter_svg(
    points: Sequence[tuple],
    x_label: str,
    y_label: str,
    size: int = 420,
    margin: int = 50,
) -> str:
    """Scatter plot with the first-quadrant bisector for win/loss reading."""
    if not points:
        raise ValueError("no points to plot")
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    hi = max(max(xs), max(ys), 1)

    def px(x, y):
        span = size - 2 * margin
        return margin + x / hi * span, size - margin - y / hi * span

    svg = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        width=str(size),
        height=str(size),
        viewBox=f"0 0 {size} {size}",
    )
    ax0 = px(0, 0)
    ET.SubElement(
        svg, "line",
        x1=_fmt(ax0[0]), y1=_fmt(ax0[1]), x2=_fmt(px(hi, 0)[0]), y2=_fmt(px(hi, 0)[1]),
        stroke="black",
    )
    ET.SubElement(
        svg, "line",
        x1=_fmt(ax0[0]), y1=_fmt(ax0[1]), x2=_fmt(px(0, hi)[0]), y2=_fmt(px(0, hi)[1]),
        stroke="black",
    )
    ET.SubElement(
        svg, "line",
        x1=_fmt(ax0[0]), y1=_fmt(ax0[1]), x2=_fmt(px(hi, hi)[0]), y2=_fmt(px(hi, hi)[1]),
        stroke="#999999", attrib={"stroke-dasharray": "4 4"},
    )
    for x, y in points:
        cx, cy = px(x, y)
        ET.SubElement(svg, "circle", cx=_fmt(cx), cy=_fmt(cy), r="3", fill="#4477aa")
    for text, (tx, ty), anchor in (
        (x_label, (size / 2, size - margin / 3), "middle"),
        (y_label, (margin / 3, size / 2), "middle"),
    ):
        el = ET.SubElement(
            svg, "text",
            x=_fmt(tx), y=_fmt(ty),
            attrib={"text-anchor": anchor, "font-size": "12", "font-family": "sans-serif"},
        )
        el.text = text
    return ET.tostring(svg, encoding="unicode") + "\n"
