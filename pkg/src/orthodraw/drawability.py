"""Drawability of a shaped graph via auxiliary order graphs.

Two auxiliary digraphs are built from a shape.  For the x axis, vertices
joined by vertically labelled edges must share an x coordinate and are
merged into alignment classes; every horizontally labelled edge induces an
arc between classes in the left-to-right sense.  The y-axis graph is the
transposed construction.  The shape admits a rectilinear drawing exactly
when both digraphs are acyclic; a directed cycle in either one is a witness
that some cycle of the underlying graph does not use all four direction
labels, and that cycle can be read back off the witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from heapq import heapify, heappop, heappush
from typing import Optional, Sequence

from .shape import HORIZONTAL, L, R, D, U, Shape, ShapeError

AXIS_X = "x"
AXIS_Y = "y"


class DrawabilityError(ValueError):
    pass


@dataclass(frozen=True)
class AuxArc:
    """Ordering arc between alignment classes, with the edge that caused it.

    ``u`` lies strictly before ``v`` along the axis (left of for x, below
    for y); ``u`` belongs to class ``src`` and ``v`` to class ``dst``.
    """

    src: int
    dst: int
    edge: int
    u: int
    v: int


@dataclass
class AuxiliaryGraph:
    axis: str
    class_of: list  # vertex -> class id
    classes: list  # class id -> sorted tuple of member vertices
    arcs: list  # list of AuxArc

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def successors(self):
        succ = [[] for _ in range(self.num_classes)]
        for a in self.arcs:
            succ[a.src].append(a)
        return succ


def build_auxiliary(graph, shape: Shape, axis: str, merge_edges=None) -> AuxiliaryGraph:
    """Alignment classes and ordering arcs for one axis.

    ``merge_edges`` optionally restricts which aligned edges may merge
    classes (used when laying out vertices of degree above four); ordering
    arcs are always derived from all perpendicular edges.
    """
    if axis not in (AXIS_X, AXIS_Y):
        raise DrawabilityError(f"unknown axis {axis!r}")
    merging = HORIZONTAL if axis == AXIS_Y else frozenset((D, U))
    parent = list(range(graph.num_vertices))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e, (t, h) in enumerate(graph.edges):
        if shape.labels[e] in merging and (merge_edges is None or e in merge_edges):
            ra, rb = find(t), find(h)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

    roots = sorted({find(v) for v in range(graph.num_vertices)})
    root_id = {r: k for k, r in enumerate(roots)}
    class_of = [root_id[find(v)] for v in range(graph.num_vertices)]
    members = [[] for _ in roots]
    for v in range(graph.num_vertices):
        members[class_of[v]].append(v)
    classes = [tuple(ms) for ms in members]

    # the label pointing toward the positive axis direction as seen from
    # the edge tail
    forward = R if axis == AXIS_X else U
    arcs = []
    for e, (t, h) in enumerate(graph.edges):
        lab = shape.labels[e]
        if lab in merging:
            continue
        u, v = (t, h) if lab == forward else (h, t)
        arcs.append(AuxArc(src=class_of[u], dst=class_of[v], edge=e, u=u, v=v))
    return AuxiliaryGraph(axis=axis, class_of=class_of, classes=classes, arcs=arcs)


def topological_order(aux: AuxiliaryGraph) -> Optional[tuple]:
    """Kahn's algorithm with an id-ordered tie break; None when cyclic."""
    indeg = [0] * aux.num_classes
    succ = aux.successors()
    for a in aux.arcs:
        indeg[a.dst] += 1
    ready = [c for c in range(aux.num_classes) if indeg[c] == 0]
    heapify(ready)
    order = []
    while ready:
        c = heappop(ready)
        order.append(c)
        for a in succ[c]:
            indeg[a.dst] -= 1
            if indeg[a.dst] == 0:
                heappush(ready, a.dst)
    if len(order) != aux.num_classes:
        return None
    return tuple(order)


def find_class_cycle(aux: AuxiliaryGraph) -> Optional[tuple]:
    """A shortest simple directed cycle of class ids, or None when acyclic.

    Shortest is preferred because the extracted graph cycle feeds back into
    the constraint set, and short cycles prune the search harder.  One BFS
    per class; ties break toward the smallest starting class.
    """
    succ_ids = [[] for _ in range(aux.num_classes)]
    for a in aux.arcs:
        succ_ids[a.src].append(a.dst)
    best = None
    for root in range(aux.num_classes):
        if any(d == root for d in succ_ids[root]):
            return (root,)  # self-loop arc, cannot get shorter
        prev = {root: None}
        queue = [root]
        qi = 0
        found = None
        while qi < len(queue) and found is None:
            c = queue[qi]
            qi += 1
            if best is not None and len(best) <= 2:
                break
            for d in succ_ids[c]:
                if d == root:
                    found = c
                    break
                if d not in prev:
                    prev[d] = c
                    queue.append(d)
        if found is None:
            continue
        path = [found]
        while prev[path[-1]] is not None:
            path.append(prev[path[-1]])
        path.reverse()
        if best is None or len(path) < len(best):
            best = tuple(path)
    return best


@dataclass(frozen=True)
class TopologicalOrders:
    """Both auxiliary graphs acyclic: the shape is drawable."""

    x_order: tuple
    y_order: tuple
    aux_x: AuxiliaryGraph
    aux_y: AuxiliaryGraph

    @property
    def drawable(self) -> bool:
        return True


@dataclass(frozen=True)
class WitnessCycle:
    """A directed class cycle proving the shape undrawable on one axis."""

    axis: str
    class_cycle: tuple
    aux: AuxiliaryGraph

    @property
    def drawable(self) -> bool:
        return False


def test_drawable(graph, shape: Shape):
    """Decide drawability; returns TopologicalOrders or a WitnessCycle.

    The x axis is checked first, so a doubly undrawable shape reports its
    x witness.
    """
    aux_x = build_auxiliary(graph, shape, AXIS_X)
    cyc = find_class_cycle(aux_x)
    if cyc is not None:
        return WitnessCycle(axis=AXIS_X, class_cycle=cyc, aux=aux_x)
    aux_y = build_auxiliary(graph, shape, AXIS_Y)
    cyc = find_class_cycle(aux_y)
    if cyc is not None:
        return WitnessCycle(axis=AXIS_Y, class_cycle=cyc, aux=aux_y)
    return TopologicalOrders(
        x_order=topological_order(aux_x),
        y_order=topological_order(aux_y),
        aux_x=aux_x,
        aux_y=aux_y,
    )


def _aligned_path(graph, shape: Shape, aux: AuxiliaryGraph, start: int, goal: int) -> list:
    """Shortest path from start to goal using only class-merging edges."""
    merging = HORIZONTAL if aux.axis == AXIS_Y else frozenset((D, U))
    if start == goal:
        return [start]
    prev = {start: None}
    queue = [start]
    qi = 0
    while qi < len(queue):
        a = queue[qi]
        qi += 1
        for b, e in graph.neighbors(a):
            if shape.labels[e] in merging and b not in prev:
                prev[b] = a
                if b == goal:
                    path = [goal]
                    while path[-1] != start:
                        path.append(prev[path[-1]])
                    path.reverse()
                    return path
                queue.append(b)
    raise DrawabilityError(
        f"vertices {start} and {goal} are not in one alignment class; "
        "the witness is stale for this shape"
    )


def extract_incomplete_cycle(graph, shape: Shape, witness: WitnessCycle) -> tuple:
    """Vertex cycle behind a witness; it misses at least one direction label.

    For an x-axis witness the cycle never walks left (only rightward arcs
    and vertical in-class paths), so it cannot be complete; symmetrically
    for y.  The closed walk formed by witness edges and in-class connector
    paths is clipped to a simple cycle at its first vertex repetition.
    """
    aux = witness.aux
    cycle = witness.class_cycle
    p = len(cycle)
    succ = aux.successors()
    # one witness arc per consecutive class pair (a self-loop when p == 1)
    arcs = []
    for k in range(p):
        src, dst = cycle[k], cycle[(k + 1) % p]
        choice = None
        for a in succ[src]:
            if a.dst == dst:
                choice = a
                break
        if choice is None:
            raise DrawabilityError(f"no arc from class {src} to {dst}; stale witness")
        expected = (R, L) if aux.axis == AXIS_X else (U, D)
        if shape.labels[choice.edge] not in expected:
            raise DrawabilityError(f"witness edge {choice.edge} no longer ordering; stale witness")
        arcs.append(choice)

    walk = []
    for k in range(p):
        enter = arcs[k - 1].v  # where the previous arc lands in this class
        leave = arcs[k].u
        walk.extend(_aligned_path(graph, shape, aux, enter, leave))
    # clip the closed walk to a simple cycle
    first_at = {}
    start, end = 0, len(walk)
    for k, v in enumerate(walk):
        if v in first_at:
            start, end = first_at[v], k
            break
        first_at[v] = k
    simple = tuple(walk[start:end])
    if len(simple) < 3:
        raise DrawabilityError("degenerate witness cycle")
    return simple


def aux_to_text(aux: AuxiliaryGraph) -> str:
    """Human-readable digraph dump in dot-like syntax."""
    lines = [f"digraph aux_{aux.axis} {{"]
    for c, ms in enumerate(aux.classes):
        lines.append(f'  c{c} [members="{",".join(str(v) for v in ms)}"];')
    for a in aux.arcs:
        lines.append(f'  c{a.src} -> c{a.dst} [edge={a.edge}, pair="{a.u}->{a.v}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
