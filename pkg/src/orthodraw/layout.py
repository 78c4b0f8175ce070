"""Grid coordinate assignment for a drawable shaped graph.

Coordinates come from longest-path layering of the two auxiliary order
graphs: the x coordinate of a vertex is the layer of its x alignment class,
and likewise for y.  Layering alone can still place two classes on one grid
line in a way that makes a vertex coincide with another vertex or sit on
the interior of an edge segment; a repair loop detects such collisions and
resolves them by adding ordering arcs between the involved classes, then
re-layers.

Vertices of degree above four cannot give every incident edge its own
direction.  Edges sharing a direction at such a vertex form a bundle; one
representative per bundle keeps the straight alignment and the rest leave
as one-bend elbows toward their other endpoint.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .drawability import (
    AXIS_X,
    AXIS_Y,
    AuxArc,
    AuxiliaryGraph,
    build_auxiliary,
    topological_order,
)
from .shape import HORIZONTAL, L, R, D, U, Shape, VERTICAL


class LayoutError(ValueError):
    pass


REPAIR_CAP_FACTOR = 20
REPAIR_CAP_BASE = 100


@dataclass
class Drawing:
    """A rectilinear grid drawing: integer points plus one polyline per edge.

    Polylines are straight for ordinary edges and may carry one elbow for
    the non-representative edges at high-degree vertices.
    """

    coords: dict  # vertex -> (x, y)
    polylines: dict  # edge -> tuple of points, first at tail, last at head

    def segments(self):
        """All ((x1, y1), (x2, y2), edge) drawing segments."""
        out = []
        for e, pts in sorted(self.polylines.items()):
            for a, b in zip(pts, pts[1:]):
                out.append((a, b, e))
        return out

    def width_height(self):
        xs = [x for x, _ in self.coords.values()]
        ys = [y for _, y in self.coords.values()]
        for pts in self.polylines.values():
            xs.extend(p[0] for p in pts)
            ys.extend(p[1] for p in pts)
        return max(xs) - min(xs), max(ys) - min(ys)


@dataclass(frozen=True)
class ExpansionPlan:
    """How edges at degree > 4 vertices are bundled.

    ``representative`` maps (vertex, label) to the edge keeping the straight
    run in that direction; ``elbow_edges`` are the remaining bundle members,
    each drawn with one extra bend.
    """

    representative: dict
    elbow_edges: tuple

    @property
    def bends_added(self) -> int:
        return len(self.elbow_edges)


def bundle_plan(graph, shape: Shape) -> ExpansionPlan:
    """Pick one representative edge per (vertex, direction) bundle.

    At vertices of degree at most four every edge is its own bundle and
    nothing changes.  The smallest edge id wins a contested bundle.
    """
    representative = {}
    elbows = set()
    for v in range(graph.num_vertices):
        nbrs = graph.neighbors(v)
        if len(nbrs) <= 4:
            for _, e in nbrs:
                lab = shape.label_from(graph, e, v)
                representative[(v, lab)] = e
            continue
        for _, e in sorted(nbrs, key=lambda we: we[1]):
            lab = shape.label_from(graph, e, v)
            if (v, lab) not in representative:
                representative[(v, lab)] = e
            else:
                elbows.add(e)
    return ExpansionPlan(representative=representative, elbow_edges=tuple(sorted(elbows)))


def _merge_edges(graph, shape: Shape, plan: ExpansionPlan):
    """Edges allowed to merge alignment classes: representative at both ends."""
    keep = set()
    for e, (t, h) in enumerate(graph.edges):
        lab = shape.labels[e]
        if plan.representative.get((t, lab)) == e and plan.representative.get(
            (h, shape.label_from(graph, e, h))
        ) == e:
            keep.add(e)
    return keep


def _longest_path_ranks(aux: AuxiliaryGraph) -> list:
    order = topological_order(aux)
    if order is None:
        raise LayoutError(f"auxiliary {aux.axis} graph is cyclic; shape is not drawable")
    rank = [0] * aux.num_classes
    succ = aux.successors()
    for c in order:
        for a in succ[c]:
            if rank[a.dst] < rank[c] + 1:
                rank[a.dst] = rank[c] + 1
    return rank


def _polylines(graph, shape: Shape, plan: ExpansionPlan, coords: dict) -> dict:
    polylines = {}
    for e, (t, h) in enumerate(graph.edges):
        pt, ph = coords[t], coords[h]
        if e not in plan.elbow_edges:
            polylines[e] = (pt, ph)
            continue
        # elbow leaves the tail in its labelled direction, turns once
        lab = shape.labels[e]
        if lab in VERTICAL:
            corner = (pt[0], ph[1])
        else:
            corner = (ph[0], pt[1])
        polylines[e] = (pt, corner, ph)
    return polylines


def _violations(graph, drawing: Drawing):
    """Sorted list of collision records to repair.

    Kinds: ("point", v, w) for two items on one grid point and
    ("segment", v, e) for a vertex inside a segment of edge e.  Elbow
    corners count as occupied points of their edge (encoded as vertex -1-e).
    """
    out = []
    occupied = {}
    for v in sorted(drawing.coords):
        occupied.setdefault(drawing.coords[v], []).append(("v", v))
    for e, pts in sorted(drawing.polylines.items()):
        for p in pts[1:-1]:
            occupied.setdefault(p, []).append(("c", e))
    for p in sorted(occupied):
        items = occupied[p]
        for i in range(len(items)):
            for j in range(i + 1, len(items)):
                out.append(("point", items[i], items[j]))
    for (x1, y1), (x2, y2), e in drawing.segments():
        t, h = graph.edges[e]
        if x1 == x2:
            lo, hi = min(y1, y2), max(y1, y2)
            for v, (xv, yv) in sorted(drawing.coords.items()):
                if v not in (t, h) and xv == x1 and lo < yv < hi:
                    out.append(("segment", ("v", v), e))
        else:
            lo, hi = min(x1, x2), max(x1, x2)
            for v, (xv, yv) in sorted(drawing.coords.items()):
                if v not in (t, h) and yv == y1 and lo < xv < hi:
                    out.append(("segment", ("v", v), e))
    return out


def _try_arc(aux: AuxiliaryGraph, src: int, dst: int) -> bool:
    """Add one ordering arc when it is new, acyclic and between two classes."""
    if src == dst:
        return False
    if any(a.src == src and a.dst == dst for a in aux.arcs):
        return False
    aux.arcs.append(AuxArc(src=src, dst=dst, edge=-1, u=-1, v=-1))
    if topological_order(aux) is not None:
        return True
    aux.arcs.pop()
    return False


def _try_separate(aux: AuxiliaryGraph, ca: int, cb: int) -> bool:
    """Order two distinct classes either way, keeping acyclicity."""
    return _try_arc(aux, ca, cb) or _try_arc(aux, cb, ca)


def assign_coordinates(graph, shape: Shape, orders=None) -> Drawing:
    """Layer both axes, then repair residual grid collisions.

    ``orders`` (a TopologicalOrders from the drawability test) is accepted
    for interface symmetry; the auxiliary graphs are rebuilt here because
    repairs extend them with extra arcs.  Raises LayoutError when the shape
    is not drawable or the repair loop fails to converge.
    """
    plan = bundle_plan(graph, shape)
    merge_x = merge_y = None
    if plan.elbow_edges:
        keep = _merge_edges(graph, shape, plan)
        merge_x = {e for e in keep if shape.labels[e] in VERTICAL}
        merge_y = {e for e in keep if shape.labels[e] in HORIZONTAL}
    aux_x = build_auxiliary(graph, shape, AXIS_X, merge_edges=merge_x)
    aux_y = build_auxiliary(graph, shape, AXIS_Y, merge_edges=merge_y)
    if topological_order(aux_x) is None or topological_order(aux_y) is None:
        raise LayoutError("shape is not drawable")

    cap = REPAIR_CAP_FACTOR * graph.num_vertices + REPAIR_CAP_BASE
    for _ in range(cap):
        rx = _longest_path_ranks(aux_x)
        ry = _longest_path_ranks(aux_y)
        coords = {
            v: (rx[aux_x.class_of[v]], ry[aux_y.class_of[v]])
            for v in range(graph.num_vertices)
        }
        drawing = Drawing(coords=coords, polylines=_polylines(graph, shape, plan, coords))
        bad = _violations(graph, drawing)
        if not bad:
            return drawing
        if not _repair_one(graph, shape, aux_x, aux_y, drawing, bad[0]):
            raise LayoutError(f"cannot separate colliding items: {bad[0]}")
    raise LayoutError(f"collision repair did not converge within {cap} rounds")


def _corner_classes(graph, shape, aux_x, aux_y, edge):
    t, h = graph.edges[edge]
    if shape.labels[edge] in VERTICAL:
        return aux_x.class_of[t], aux_y.class_of[h]
    return aux_x.class_of[h], aux_y.class_of[t]


def _repair_one(graph, shape, aux_x, aux_y, drawing, violation) -> bool:
    kind = violation[0]
    if kind == "point":
        _, a, b = violation
        # an elbow corner is kept between its tail and the colliding item
        # along the stub axis, so the stub stays clear of the straight
        # bundle representative running the same way
        for item, other in ((a, b), (b, a)):
            if item[0] != "c":
                continue
            e = item[1]
            lab = shape.labels[e]
            vertical = lab in VERTICAL
            aux = aux_y if vertical else aux_x
            corner = _corner_classes(graph, shape, aux_x, aux_y, e)[1 if vertical else 0]
            co = _classes_of(graph, shape, aux_x, aux_y, other)[1 if vertical else 0]
            src, dst = (corner, co) if lab in (U, R) else (co, corner)
            if _try_arc(aux, src, dst):
                return True
        cxa, cya = _classes_of(graph, shape, aux_x, aux_y, a)
        cxb, cyb = _classes_of(graph, shape, aux_x, aux_y, b)
        return _try_separate(aux_x, cxa, cxb) or _try_separate(aux_y, cya, cyb)
    _, item, e = violation
    cxv, cyv = _classes_of(graph, shape, aux_x, aux_y, item)
    t, h = graph.edges[e]
    # separating perpendicular to the segment moves the vertex off its line
    pts = drawing.polylines[e]
    for a, b in zip(pts, pts[1:]):
        if a[0] == b[0]:
            if _try_separate(aux_x, cxv, aux_x.class_of[t]) or _try_separate(
                aux_x, cxv, aux_x.class_of[h]
            ):
                return True
        else:
            if _try_separate(aux_y, cyv, aux_y.class_of[t]) or _try_separate(
                aux_y, cyv, aux_y.class_of[h]
            ):
                return True
    # the perpendicular coordinate is pinned (the vertex shares its class
    # with an endpoint): push the vertex past the far end of the span instead
    for aux, axis in ((aux_y, 1), (aux_x, 0)):
        lo, hi = (t, h) if drawing.coords[t][axis] <= drawing.coords[h][axis] else (h, t)
        cv = cyv if axis == 1 else cxv
        if _try_arc(aux, aux.class_of[hi], cv) or _try_arc(aux, cv, aux.class_of[lo]):
            return True
    return False


def _classes_of(graph, shape, aux_x, aux_y, item):
    kind, ident = item
    if kind == "v":
        return aux_x.class_of[ident], aux_y.class_of[ident]
    return _corner_classes(graph, shape, aux_x, aux_y, ident)


def expand_high_degree(graph, shape: Shape, drawing: Drawing):
    """Bundle separation for degree > 4 vertices; returns (Drawing, plan).

    Coordinate assignment already routes each non-representative bundle
    member as a one-bend elbow, so the drawing comes back unchanged and the
    plan reports which edges were bent apart.  Identity plan when no vertex
    exceeds degree four.
    """
    return drawing, bundle_plan(graph, shape)


# -- dummy vertex bookkeeping ----------------------------------------------


@dataclass(frozen=True)
class StraightenReport:
    """Which dummy vertices turn (become bends) and which lie straight."""

    bent: tuple
    straight: tuple

    @property
    def total(self) -> int:
        return len(self.bent) + len(self.straight)

    @property
    def bend_fraction(self) -> float:
        return len(self.bent) / self.total if self.total else 1.0


def straighten_report(graph, drawing: Drawing) -> StraightenReport:
    """Classify each dummy vertex by the angle its drawn segments form."""
    bent = []
    straight = []
    for v in sorted(graph.dummy_parent):
        nbrs = graph.neighbors(v)
        if len(nbrs) != 2:
            raise LayoutError(f"dummy vertex {v} has degree {len(nbrs)}")
        dirs = []
        for _, e in nbrs:
            pts = drawing.polylines[e]
            if pts[0] != drawing.coords[v]:
                pts = pts[::-1]
            (x1, y1), (x2, y2) = pts[0], pts[1]
            dirs.append(x1 == x2)  # True when the segment leaves vertically
        if dirs[0] == dirs[1]:
            straight.append(v)
        else:
            bent.append(v)
    return StraightenReport(bent=tuple(bent), straight=tuple(straight))


# -- validation -------------------------------------------------------------


def validate_drawing(graph, shape: Shape, drawing: Drawing) -> None:
    """Check the grid drawing invariants; raises LayoutError on violation.

    Integer coordinates, distinct vertex points, axis-parallel segments
    leaving the tail in the labelled direction, and no vertex on a segment
    interior.
    """
    for v in range(graph.num_vertices):
        x, y = drawing.coords[v]
        if not (isinstance(x, int) and isinstance(y, int)):
            raise LayoutError(f"vertex {v} has non-integer coordinates")
    points = {}
    for v in range(graph.num_vertices):
        p = drawing.coords[v]
        if p in points:
            raise LayoutError(f"vertices {points[p]} and {v} share point {p}")
        points[p] = v
    plan = bundle_plan(graph, shape)
    for e, (t, h) in enumerate(graph.edges):
        pts = drawing.polylines[e]
        if pts[0] != drawing.coords[t] or pts[-1] != drawing.coords[h]:
            raise LayoutError(f"polyline of edge {e} does not join its endpoints")
        step = {R: (1, 0), L: (-1, 0), U: (0, 1), D: (0, -1)}
        for (x1, y1), (x2, y2) in zip(pts, pts[1:]):
            if (x1 == x2) == (y1 == y2):
                raise LayoutError(f"edge {e} has a non-axis-parallel or empty segment")
        if e not in plan.elbow_edges:
            dx, dy = step[shape.labels[e]]
            x1, y1 = pts[0]
            x2, y2 = pts[1]
            if (x2 - x1) * dy != 0 or (y2 - y1) * dx != 0:
                raise LayoutError(f"edge {e} does not leave its tail in direction {shape.labels[e]}")
            if dx * (x2 - x1) < 0 or dy * (y2 - y1) < 0:
                raise LayoutError(f"edge {e} runs against its label {shape.labels[e]}")
    for (x1, y1), (x2, y2), e in drawing.segments():
        t, h = graph.edges[e]
        for v, (xv, yv) in drawing.coords.items():
            if v in (t, h):
                continue
            if x1 == x2 and xv == x1 and min(y1, y2) < yv < max(y1, y2):
                raise LayoutError(f"vertex {v} lies inside a segment of edge {e}")
            if y1 == y2 and yv == y1 and min(x1, x2) < xv < max(x1, x2):
                raise LayoutError(f"vertex {v} lies inside a segment of edge {e}")


# -- serialization ----------------------------------------------------------


def drawing_to_json_dict(graph, drawing: Drawing) -> dict:
    return {
        "vertices": [
            {
                "id": v,
                "x": drawing.coords[v][0],
                "y": drawing.coords[v][1],
                "dummy": graph.is_dummy(v),
            }
            for v in range(graph.num_vertices)
        ],
        "edges": [
            {
                "id": e,
                "tail": t,
                "head": h,
                "points": [list(p) for p in drawing.polylines[e]],
            }
            for e, (t, h) in enumerate(graph.edges)
        ],
    }
