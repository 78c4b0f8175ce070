"""Quality metrics of rectilinear drawings and grid normalization of
externally produced coordinates.

Metrics are taken per base edge: an edge subdivided by dummy vertices is
measured as one polyline, so a dummy vertex where the line turns counts as
a bend of the original edge.  Area is the bounding-box cell count
(width+1)(height+1), which makes all metrics invariant under translation.

External drawings come with real-valued coordinates where points meant to
share a grid line differ by a few units and distinct grid lines sit tens of
units apart.  Normalization clusters each axis into columns and assigns
consecutive integers.  Gaps of at most ``gap_small`` merge, gaps of at
least ``gap_column`` separate, anything in between is rejected as
ambiguous.  An axis showing no column-scale gap at all is taken to be
grid-like already and every distinct value becomes its own column; this
makes the procedure the identity on its own output.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field, fields
from typing import Optional, Sequence

import numpy as np

GAP_SMALL = 8.0
GAP_COLUMN = 15.0


class MetricsError(ValueError):
    pass


@dataclass(frozen=True)
class MetricsReport:
    bends: int
    crossings: int
    bends_deviation: float
    max_bends: int
    area: int
    total_edge_length: int
    max_edge_length: int
    edge_length_deviation: float
    time_seconds: float


METRIC_FIELDS = tuple(f.name for f in fields(MetricsReport))


def _chain_points(graph, drawing, base_edge: int) -> list:
    """Polyline of one base edge through its subdivision chain."""
    chain = graph.base_chain(base_edge)
    pts = [drawing.coords[chain[0]]]
    for a, b in zip(chain, chain[1:]):
        e = graph.edge_between(a, b)
        poly = drawing.polylines[e]
        if poly[0] == drawing.coords[a]:
            pts.extend(poly[1:])
        else:
            pts.extend(poly[-2::-1])
    return pts


def _bend_count(pts: Sequence) -> int:
    bends = 0
    for (x1, y1), (x2, y2), (x3, y3) in zip(pts, pts[1:], pts[2:]):
        if (x1 == x2) != (x2 == x3):
            bends += 1
    return bends


def _length(pts: Sequence) -> int:
    return sum(abs(x2 - x1) + abs(y2 - y1) for (x1, y1), (x2, y2) in zip(pts, pts[1:]))


def count_crossings(graph, drawing) -> int:
    """Interior-interior intersections of segments from distinct base edges.

    Touching endpoints and collinear overlaps do not count.
    """
    horiz = []
    vert = []
    for (x1, y1), (x2, y2), e in drawing.segments():
        base = graph.origin[e]
        if y1 == y2:
            horiz.append((y1, min(x1, x2), max(x1, x2), base))
        else:
            vert.append((x1, min(y1, y2), max(y1, y2), base))
    crossings = 0
    for hy, hx1, hx2, hb in horiz:
        for vx, vy1, vy2, vb in vert:
            if hb != vb and hx1 < vx < hx2 and vy1 < hy < vy2:
                crossings += 1
    return crossings


def compute_metrics(graph, drawing, elapsed: float = 0.0) -> MetricsReport:
    base_ids = sorted(set(graph.origin))
    chains = {b: _chain_points(graph, drawing, b) for b in base_ids}
    bends = [_bend_count(chains[b]) for b in base_ids]
    lengths = [_length(chains[b]) for b in base_ids]
    xs = [p[0] for pts in chains.values() for p in pts] or [0]
    ys = [p[1] for pts in chains.values() for p in pts] or [0]
    return MetricsReport(
        bends=sum(bends),
        crossings=count_crossings(graph, drawing),
        bends_deviation=float(np.std(bends)) if bends else 0.0,
        max_bends=max(bends, default=0),
        area=(max(xs) - min(xs) + 1) * (max(ys) - min(ys) + 1),
        total_edge_length=sum(lengths),
        max_edge_length=max(lengths, default=0),
        edge_length_deviation=float(np.std(lengths)) if lengths else 0.0,
        time_seconds=elapsed,
    )


# -- normalization of external coordinates ---------------------------------


@dataclass(frozen=True)
class NormalizedDrawing:
    coords: dict  # vertex id -> (int x, int y)
    bends: tuple  # bend points as (int x, int y)

    def width_height(self):
        xs = [x for x, _ in self.coords.values()] + [x for x, _ in self.bends]
        ys = [y for _, y in self.coords.values()] + [y for _, y in self.bends]
        return max(xs) - min(xs), max(ys) - min(ys)

    @property
    def area(self) -> int:
        w, h = self.width_height()
        return (w + 1) * (h + 1)


def _axis_columns(values, gap_small: float, gap_column: float) -> dict:
    """Map each raw value on one axis to its integer column."""
    distinct = sorted(set(values))
    if len(distinct) <= 1:
        return {v: 0 for v in distinct}
    gaps = [b - a for a, b in zip(distinct, distinct[1:])]
    if max(gaps) < gap_column:
        # no column-scale structure: treat as already grid-like
        return {v: k for k, v in enumerate(distinct)}
    clusters = [[distinct[0]]]
    for prev, cur in zip(distinct, distinct[1:]):
        gap = cur - prev
        if gap <= gap_small:
            clusters[-1].append(cur)
        elif gap >= gap_column:
            clusters.append([cur])
        else:
            raise MetricsError(
                f"ambiguous coordinate gap {gap} between {prev} and {cur} "
                f"(merge at <= {gap_small}, separate at >= {gap_column})"
            )
    column = {}
    for k, cluster in enumerate(clusters):
        if cluster[-1] - cluster[0] > gap_small:
            raise MetricsError(
                f"cluster around {cluster[0]} spreads over "
                f"{cluster[-1] - cluster[0]} units, beyond the merge bound {gap_small}"
            )
        for v in cluster:
            column[v] = k
    return column


def normalize_external(
    raw: Sequence[tuple],
    raw_bends: Sequence[tuple] = (),
    gap_small: float = GAP_SMALL,
    gap_column: float = GAP_COLUMN,
) -> NormalizedDrawing:
    """Snap external coordinates to the integer grid.

    ``raw`` holds (id, x, y) triples for vertices, ``raw_bends`` holds
    (x, y) bend points.  Vertices and bends share the axis clustering.
    """
    xs = [x for _, x, _ in raw] + [x for x, _ in raw_bends]
    ys = [y for _, _, y in raw] + [y for _, y in raw_bends]
    if not xs:
        raise MetricsError("nothing to normalize")
    col_x = _axis_columns(xs, gap_small, gap_column)
    col_y = _axis_columns(ys, gap_small, gap_column)
    coords = {i: (col_x[x], col_y[y]) for i, x, y in raw}
    bends = tuple((col_x[x], col_y[y]) for x, y in raw_bends)
    return NormalizedDrawing(coords=coords, bends=bends)


# -- batch comparison -------------------------------------------------------


@dataclass(frozen=True)
class MetricComparison:
    metric: str
    rows: tuple  # (instance id, value A, value B)
    wins_a: float  # percentage of instances where A is strictly lower
    ties: float
    wins_b: float
    linear_fit: tuple  # (slope, intercept) of B against A
    quadratic_fit: tuple
    r2_linear: float
    r2_quadratic: float


def _fit(xs: np.ndarray, ys: np.ndarray, degree: int):
    if len(xs) <= degree or np.allclose(xs, xs[0]):
        return (0.0,) * degree + (float(np.mean(ys)),), 1.0 if np.allclose(ys, ys[0]) else 0.0
    coeffs = np.polyfit(xs, ys, degree)
    pred = np.polyval(coeffs, xs)
    ss_res = float(np.sum((ys - pred) ** 2))
    ss_tot = float(np.sum((ys - np.mean(ys)) ** 2))
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return tuple(float(c) for c in coeffs), r2


def batch_compare(reports_a: dict, reports_b: dict) -> list:
    """Per-metric scatter rows, win rates and trend fits of two report sets.

    Both arguments map instance ids to MetricsReport; the id sets must
    match.  Win percentages treat lower as better for every metric.
    """
    if set(reports_a) != set(reports_b):
        only_a = sorted(set(reports_a) - set(reports_b))
        only_b = sorted(set(reports_b) - set(reports_a))
        raise MetricsError(f"instance sets differ (only A: {only_a}, only B: {only_b})")
    ids = sorted(reports_a)
    if not ids:
        raise MetricsError("no instances to compare")
    out = []
    for name in METRIC_FIELDS:
        rows = tuple((i, getattr(reports_a[i], name), getattr(reports_b[i], name)) for i in ids)
        va = np.array([r[1] for r in rows], dtype=float)
        vb = np.array([r[2] for r in rows], dtype=float)
        wins_a = float(np.sum(va < vb)) / len(ids) * 100
        wins_b = float(np.sum(vb < va)) / len(ids) * 100
        lin, r2_lin = _fit(va, vb, 1)
        quad, r2_quad = _fit(va, vb, 2)
        out.append(
            MetricComparison(
                metric=name,
                rows=rows,
                wins_a=wins_a,
                ties=100 - wins_a - wins_b,
                wins_b=wins_b,
                linear_fit=lin,
                quadratic_fit=quad,
                r2_linear=r2_lin,
                r2_quadratic=r2_quad,
            )
        )
    return out


# -- emitters ---------------------------------------------------------------


def reports_to_csv(reports: dict) -> str:
    """One row per instance, columns = instance id + the nine metrics."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(("instance",) + METRIC_FIELDS)
    for i in sorted(reports):
        r = reports[i]
        writer.writerow([i] + [getattr(r, name) for name in METRIC_FIELDS])
    return buf.getvalue()


def report_to_json_dict(r: MetricsReport) -> dict:
    return {name: getattr(r, name) for name in METRIC_FIELDS}


def comparison_to_json_dict(comparisons: list) -> dict:
    return {
        c.metric: {
            "wins_a": c.wins_a,
            "ties": c.ties,
            "wins_b": c.wins_b,
            "linear_fit": list(c.linear_fit),
            "quadratic_fit": list(c.quadratic_fit),
            "r2_linear": c.r2_linear,
            "r2_quadratic": c.r2_quadratic,
            "rows": [list(row) for row in c.rows],
        }
        for c in comparisons
    }
