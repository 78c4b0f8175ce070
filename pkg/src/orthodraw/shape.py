"""Direction labels and edge shapes.

A shape assigns one of the four direction labels L, R, D, U to every edge,
stored for the edge's reference orientation.  Reading an edge against its
orientation yields the opposite label (an R edge traversed backwards points
left).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

L = "L"
R = "R"
D = "D"
U = "U"

LABELS = (L, R, D, U)
OPPOSITE = {L: R, R: L, D: U, U: D}
HORIZONTAL = frozenset((L, R))
VERTICAL = frozenset((D, U))


class ShapeError(ValueError):
    """Raised when a label assignment violates shape constraints."""


@dataclass(frozen=True)
class Shape:
    """Total map from edge id to direction label (reference orientation)."""

    labels: dict

    def label(self, edge: int) -> str:
        return self.labels[edge]

    def label_from(self, graph, edge: int, source: int) -> str:
        """Label of ``edge`` as seen when leaving ``source``."""
        tail, head = graph.edges[edge]
        if source == tail:
            return self.labels[edge]
        if source == head:
            return OPPOSITE[self.labels[edge]]
        raise ShapeError(f"vertex {source} is not an endpoint of edge {edge}")

    def outgoing_labels(self, graph, vertex: int) -> list:
        return [self.label_from(graph, e, vertex) for _, e in graph.neighbors(vertex)]


def validate_shape(graph, shape: Shape) -> None:
    """Check totality and the per-vertex direction constraints.

    Vertices of degree at most 4 may not have two incident edges leaving in
    the same direction.  Higher-degree vertices are only required to use all
    four directions at least once.
    """
    for e in range(graph.num_edges):
        lab = shape.labels.get(e)
        if lab not in LABELS:
            raise ShapeError(f"edge {e} has no valid label (got {lab!r})")
    if len(shape.labels) != graph.num_edges:
        extra = set(shape.labels) - set(range(graph.num_edges))
        raise ShapeError(f"shape labels unknown edges: {sorted(extra)}")
    for v in range(graph.num_vertices):
        out = shape.outgoing_labels(graph, v)
        if len(out) <= 4:
            if len(set(out)) != len(out):
                raise ShapeError(f"vertex {v} has two edges leaving in the same direction")
        else:
            missing = set(LABELS) - set(out)
            if missing:
                raise ShapeError(
                    f"high-degree vertex {v} misses directions {sorted(missing)}"
                )


def is_valid_shape(graph, shape: Shape) -> bool:
    try:
        validate_shape(graph, shape)
    except ShapeError:
        return False
    return True


@dataclass(frozen=True)
class CompletenessReport:
    """Which of the four labels a traversed cycle uses."""

    present: frozenset
    complete: bool

    @property
    def missing(self) -> frozenset:
        return frozenset(LABELS) - self.present


def cycle_labels(graph, shape: Shape, cycle: Sequence[int]) -> list:
    """Traversal-corrected labels along a simple cycle (vertex sequence)."""
    if len(cycle) < 3:
        raise ShapeError("a simple cycle needs at least 3 vertices")
    if len(set(cycle)) != len(cycle):
        raise ShapeError("cycle repeats a vertex")
    labels = []
    for i, a in enumerate(cycle):
        b = cycle[(i + 1) % len(cycle)]
        e = graph.edge_between(a, b)
        if e is None:
            raise ShapeError(f"({a}, {b}) is not an edge")
        labels.append(shape.label_from(graph, e, a))
    return labels


def is_cycle_complete(graph, shape: Shape, cycle: Sequence[int]) -> CompletenessReport:
    present = frozenset(cycle_labels(graph, shape, cycle))
    return CompletenessReport(present=present, complete=present == frozenset(LABELS))


def shape_of_coordinates(graph, coords: dict) -> Shape:
    """Read a shape off vertex coordinates of a rectilinear drawing."""
    labels = {}
    for e, (t, h) in enumerate(graph.edges):
        xt, yt = coords[t]
        xh, yh = coords[h]
        if yt == yh and xt < xh:
            labels[e] = R
        elif yt == yh and xt > xh:
            labels[e] = L
        elif xt == xh and yt < yh:
            labels[e] = U
        elif xt == xh and yt > yh:
            labels[e] = D
        else:
            raise ShapeError(f"edge {e} is not axis-parallel in the given coordinates")
    return Shape(labels)
