"""Shared oracle helpers for the test suite.

Everything here is deliberately independent of the package internals: brute
force searches, exhaustive enumerations and a second opinion on geometry.
The tests compare the fast implementations against these slow oracles.
"""

from __future__ import annotations

import itertools
import random

import pytest

from orthodraw.graph import Graph
from orthodraw.shape import LABELS, OPPOSITE, Shape, is_valid_shape


def all_simple_cycles(g: Graph) -> list:
    """Every simple cycle as a canonical vertex tuple.

    Enumerates edge subsets for small graphs: a subset is a simple cycle
    exactly when every touched vertex has degree 2 in it and it is
    connected.  Exponential, fine for |E| <= 7.
    """
    cycles = []
    m = g.num_edges
    for mask in range(1, 1 << m):
        deg = {}
        for e in range(m):
            if mask >> e & 1:
                t, h = g.edges[e]
                deg[t] = deg.get(t, 0) + 1
                deg[h] = deg.get(h, 0) + 1
        if any(d != 2 for d in deg.values()) or len(deg) < 3:
            continue
        # walk the subset; it is one cycle iff the walk visits every vertex
        adj = {}
        for e in range(m):
            if mask >> e & 1:
                t, h = g.edges[e]
                adj.setdefault(t, []).append(h)
                adj.setdefault(h, []).append(t)
        start = min(deg)
        walk = [start]
        prev = None
        while True:
            nxts = [w for w in adj[walk[-1]] if w != prev]
            prev = walk[-1]
            walk.append(nxts[0])
            if walk[-1] == start:
                break
        if len(walk) - 1 == len(deg):
            cycles.append(canonical(walk[:-1]))
    return sorted(set(cycles))


def canonical(seq) -> tuple:
    seq = list(seq)
    i = seq.index(min(seq))
    rot = seq[i:] + seq[:i]
    if rot[-1] < rot[1]:
        rot = [rot[0]] + rot[:0:-1]
    return tuple(rot)


def simple_cycles_nx(g: Graph) -> list:
    """Simple cycles via networkx, for graphs too big for subset search."""
    import networkx as nx

    ng = nx.Graph()
    ng.add_nodes_from(range(g.num_vertices))
    ng.add_edges_from(g.edges)
    return sorted({canonical(c) for c in nx.simple_cycles(ng) if len(c) >= 3})


def connected_graph_catalog(max_edges: int = 7) -> list:
    """All connected graphs with 1..max_edges edges, up to isomorphism.

    The networkx atlas covers everything on at most 7 vertices; connected
    graphs with 7 edges and 8 vertices are exactly the 8-vertex trees.
    """
    import networkx as nx
    from networkx.generators.atlas import graph_atlas_g

    out = []
    for ng in graph_atlas_g():
        m = ng.number_of_edges()
        if 1 <= m <= max_edges and ng.number_of_nodes() >= 2 and nx.is_connected(ng):
            mapping = {v: k for k, v in enumerate(sorted(ng.nodes()))}
            edges = [(mapping[a], mapping[b]) for a, b in ng.edges()]
            out.append(Graph(ng.number_of_nodes(), edges))
    if max_edges >= 7:
        for ng in nx.nonisomorphic_trees(8):
            out.append(Graph(8, list(ng.edges())))
    return out


def brute_force_shape_exists(g: Graph, cycles) -> bool:
    """Search all 4^|E| labelings for a valid shape completing every cycle."""
    from orthodraw.shape import is_cycle_complete

    for combo in itertools.product(LABELS, repeat=g.num_edges):
        shape = Shape(dict(enumerate(combo)))
        if not is_valid_shape(g, shape):
            continue
        if all(is_cycle_complete(g, shape, c).complete for c in cycles):
            return True
    return False


def random_valid_shape(g: Graph, rng: random.Random, tries: int = 2000):
    """Rejection-sampled valid shape, or None when none was hit."""
    for _ in range(tries):
        shape = Shape({e: rng.choice(LABELS) for e in range(g.num_edges)})
        if is_valid_shape(g, shape):
            return shape
    return None


def brute_force_grid_drawing(g: Graph, shape: Shape, grid: int):
    """Backtracking search for a rectilinear drawing on a grid x grid board.

    Places vertices in a connected order; each edge must be a straight
    axis-parallel segment leaving its tail in the labelled direction, all
    points distinct and no vertex interior to a segment.  Returns a coords
    dict or None.
    """
    order = [0]
    seen = {0}
    qi = 0
    while qi < len(order):
        for w, _ in g.neighbors(order[qi]):
            if w not in seen:
                seen.add(w)
                order.append(w)
        qi += 1
    step = {"R": (1, 0), "L": (-1, 0), "U": (0, 1), "D": (0, -1)}

    def segment_ok(coords, a, b):
        # no third placed vertex strictly inside segment a-b
        (x1, y1), (x2, y2) = coords[a], coords[b]
        for v, (xv, yv) in coords.items():
            if v in (a, b):
                continue
            if x1 == x2 and xv == x1 and min(y1, y2) < yv < max(y1, y2):
                return False
            if y1 == y2 and yv == y1 and min(x1, x2) < xv < max(x1, x2):
                return False
        return True

    def edges_ok(coords, v):
        for w, e in g.neighbors(v):
            if w not in coords:
                continue
            lab = shape.label_from(g, e, v)
            dx, dy = step[lab]
            (x1, y1), (x2, y2) = coords[v], coords[w]
            if (x2 - x1) * dy != (y2 - y1) * dx:
                return False
            if dx * (x2 - x1) + dy * (y2 - y1) <= 0:
                return False
            if not segment_ok(coords, v, w):
                return False
        # a vertex may also not land inside an already placed edge
        for a in coords:
            if a == v:
                continue
            for b, _ in g.neighbors(a):
                if b in coords and b != v and not segment_ok(coords, a, b):
                    return False
        return True

    coords = {}

    def place(k):
        if k == len(order):
            return True
        v = order[k]
        for x in range(grid):
            for y in range(grid):
                if (x, y) in coords.values():
                    continue
                coords[v] = (x, y)
                if edges_ok(coords, v):
                    if place(k + 1):
                        return True
                del coords[v]
        return False

    return dict(coords) if place(0) else None


def random_connected_deg4(rng: random.Random, n: int) -> Graph:
    """Small random connected graph with max degree 4 (tree plus extras)."""
    edges = []
    deg = [0] * n
    for v in range(1, n):
        u = rng.randrange(v)
        tries = 0
        while deg[u] >= 4 and tries < 20:
            u = rng.randrange(v)
            tries += 1
        edges.append((u, v))
        deg[u] += 1
        deg[v] += 1
    present = {(min(a, b), max(a, b)) for a, b in edges}
    for _ in range(rng.randrange(0, n)):
        a, b = rng.randrange(n), rng.randrange(n)
        key = (min(a, b), max(a, b))
        if a != b and key not in present and deg[a] < 4 and deg[b] < 4:
            present.add(key)
            edges.append((a, b))
            deg[a] += 1
            deg[b] += 1
    return Graph(n, edges)


@pytest.fixture(scope="session")
def small_catalog():
    return connected_graph_catalog(7)
