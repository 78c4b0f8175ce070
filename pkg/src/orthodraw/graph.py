"""Graph representation, structural algorithms and instance generators.

Vertices are dense integer ids.  Every edge carries a fixed reference
orientation (tail, head); paths, cycles and degrees ignore it.  Graphs
remember their subdivision ancestry: each edge knows which edge of the base
graph it descends from, and dummy vertices know their parent base edge.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .shape import D, L, OPPOSITE, R, Shape, U


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class SubdivisionRecord:
    """How one edge was replaced by a two-edge path through a dummy vertex."""

    split_edge: int
    tail: int
    head: int
    dummy_vertex: int
    replacement_edges: tuple  # (tail->dummy, dummy->head) edge ids


@dataclass(frozen=True)
class BiconnectedComponent:
    edges: tuple
    trivial: bool


class Graph:
    def __init__(
        self,
        num_vertices: int,
        edges: Sequence[tuple],
        dummy_parent: Optional[dict] = None,
        origin: Optional[Sequence[int]] = None,
        base_edges: Optional[Sequence[tuple]] = None,
    ):
        self.num_vertices = num_vertices
        self.edges = [tuple(e) for e in edges]
        self.dummy_parent = dict(dummy_parent or {})
        self.origin = list(origin) if origin is not None else list(range(len(self.edges)))
        self.base_edges = [tuple(e) for e in (base_edges if base_edges is not None else self.edges)]
        self._validate()
        self._adj = None
        self._edge_index = None

    def _validate(self) -> None:
        seen = set()
        for e, (t, h) in enumerate(self.edges):
            if t == h:
                raise GraphError(f"self-loop at vertex {t}")
            if not (0 <= t < self.num_vertices and 0 <= h < self.num_vertices):
                raise GraphError(f"edge {e} references unknown vertex")
            key = (min(t, h), max(t, h))
            if key in seen:
                raise GraphError(f"parallel edge {t}-{h}")
            seen.add(key)

    # -- basic accessors ---------------------------------------------------

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.num_vertices)

    def adjacency(self):
        """vertex -> sorted list of (neighbor, edge id)."""
        if self._adj is None:
            adj = [[] for _ in range(self.num_vertices)]
            for e, (t, h) in enumerate(self.edges):
                adj[t].append((h, e))
                adj[h].append((t, e))
            for lst in adj:
                lst.sort()
            self._adj = adj
        return self._adj

    def neighbors(self, v: int):
        return self.adjacency()[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency()[v])

    def max_degree(self) -> int:
        return max((self.degree(v) for v in self.vertices()), default=0)

    def edge_between(self, u: int, v: int) -> Optional[int]:
        if self._edge_index is None:
            idx = {}
            for e, (t, h) in enumerate(self.edges):
                idx[(t, h)] = e
                idx[(h, t)] = e
            self._edge_index = idx
        return self._edge_index.get((u, v))

    def is_dummy(self, v: int) -> bool:
        return v in self.dummy_parent

    def is_connected(self) -> bool:
        if self.num_vertices == 0:
            return True
        seen = {0}
        stack = [0]
        adj = self.adjacency()
        while stack:
            v = stack.pop()
            for w, _ in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.num_vertices

    # -- subdivision ancestry ----------------------------------------------

    def base_chain(self, base_edge: int) -> list:
        """Vertex chain replacing a base edge, from its tail to its head."""
        bt, bh = self.base_edges[base_edge]
        members = [e for e in range(self.num_edges) if self.origin[e] == base_edge]
        if not members:
            raise GraphError(f"no edges descend from base edge {base_edge}")
        succ = {}
        for e in members:
            t, h = self.edges[e]
            succ.setdefault(t, []).append(h)
            succ.setdefault(h, []).append(t)
        chain = [bt]
        prev = None
        cur = bt
        while cur != bh:
            nxts = [w for w in succ[cur] if w != prev]
            if len(nxts) != 1:
                raise GraphError(f"broken subdivision chain for base edge {base_edge}")
            prev, cur = cur, nxts[0]
            chain.append(cur)
        return chain


# -- structural algorithms ------------------------------------------------


def biconnected_components(g: Graph) -> list:
    """Edge partition into biconnected components (iterative Hopcroft-Tarjan)."""
    if not g.is_connected():
        raise GraphError("graph must be connected")
    adj = g.adjacency()
    disc = [-1] * g.num_vertices
    low = [0] * g.num_vertices
    comps = []
    edge_stack = []
    timer = 0
    for root in g.vertices():
        if disc[root] != -1:
            continue
        stack = [(root, -1, iter(adj[root]))]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, parent_edge, it = stack[-1]
            advanced = False
            for w, e in it:
                if e == parent_edge:
                    continue
                if disc[w] == -1:
                    edge_stack.append(e)
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, e, iter(adj[w])))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    edge_stack.append(e)
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                pv = stack[-1][0]
                low[pv] = min(low[pv], low[v])
                if low[v] >= disc[pv]:
                    comp = []
                    while True:
                        e = edge_stack.pop()
                        comp.append(e)
                        if e == parent_edge:
                            break
                    comp = tuple(sorted(comp))
                    comps.append(BiconnectedComponent(comp, trivial=len(comp) == 1))
    comps.sort(key=lambda c: c.edges)
    return comps


def canonical_cycle(seq: Sequence[int]) -> tuple:
    """Rotate/flip a vertex cycle so the smallest id comes first and its
    smaller neighbor second."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        raise GraphError("cycle repeats a vertex")
    i = seq.index(min(seq))
    rot = seq[i:] + seq[:i]
    if rot[-1] < rot[1]:
        rot = [rot[0]] + rot[:0:-1]
    return tuple(rot)


def cycle_basis(g: Graph) -> list:
    """Fundamental cycles of a BFS tree rooted at the smallest vertex.

    For every non-tree edge (u, v) the cycle closes through the tree paths
    from u and v to their lowest common ancestor.  Output size is
    |E| - |V| + 1 and every edge of a non-trivial biconnected component is
    covered.
    """
    if not g.is_connected():
        raise GraphError("graph must be connected")
    if g.num_vertices == 0:
        return []
    parent = {0: None}
    depth = {0: 0}
    order = [0]
    tree_edges = set()
    qi = 0
    while qi < len(order):
        v = order[qi]
        qi += 1
        for w, e in g.neighbors(v):
            if w not in parent:
                parent[w] = v
                depth[w] = depth[v] + 1
                tree_edges.add(e)
                order.append(w)
    cycles = []
    seen = set()
    for e, (t, h) in enumerate(g.edges):
        if e in tree_edges:
            continue
        u, v = t, h
        pu, pv = [u], [v]
        while depth[pu[-1]] > depth[pv[-1]]:
            pu.append(parent[pu[-1]])
        while depth[pv[-1]] > depth[pu[-1]]:
            pv.append(parent[pv[-1]])
        while pu[-1] != pv[-1]:
            pu.append(parent[pu[-1]])
            pv.append(parent[pv[-1]])
        cyc = canonical_cycle(pu + pv[-2::-1])
        if cyc not in seen:
            seen.add(cyc)
            cycles.append(cyc)
    return cycles


def subdivide_edge(g: Graph, e: int):
    """Split edge ``e`` with a fresh dummy vertex; returns (graph, record)."""
    if not (0 <= e < g.num_edges):
        raise GraphError(f"unknown edge id {e}")
    t, h = g.edges[e]
    w = g.num_vertices
    edges = list(g.edges)
    edges[e] = (t, w)
    new_edge = len(edges)
    edges.append((w, h))
    origin = list(g.origin)
    origin.append(origin[e])
    dummy_parent = dict(g.dummy_parent)
    dummy_parent[w] = origin[e]
    g2 = Graph(
        g.num_vertices + 1,
        edges,
        dummy_parent=dummy_parent,
        origin=origin,
        base_edges=g.base_edges,
    )
    rec = SubdivisionRecord(
        split_edge=e, tail=t, head=h, dummy_vertex=w, replacement_edges=(e, new_edge)
    )
    return g2, rec


# -- instance generators ---------------------------------------------------

# The seedable RNG used throughout is random.Random (Mersenne Twister), whose
# sequence is stable across Python versions for the methods used here.

GENERATOR_PAIR_BUDGET_FACTOR = 100
# sparse instances (density near 1.25) sit below the G(n, m) connectivity
# threshold, so most samples are disconnected and many retries are normal
GENERATOR_CONNECTIVITY_ATTEMPTS = 2000


def edge_count_for_density(n: int, density: float) -> int:
    return math.floor(n * density)


def generate_random_deg4(n: int, density: float, seed: int) -> Graph:
    """Random connected simple graph with max degree 4 and floor(n*density)
    edges, built by rejection sampling of vertex pairs.

    Pairs that would create a self-loop, a parallel edge, or a degree-5
    vertex are redrawn.  Disconnected instances are regenerated wholesale.
    """
    if n < 2:
        raise GraphError("need at least 2 vertices")
    if density <= 0 or density > 2:
        raise GraphError("density must lie in (0, 2]")
    m = edge_count_for_density(n, density)
    rng = random.Random(seed)
    for _ in range(GENERATOR_CONNECTIVITY_ATTEMPTS):
        deg = [0] * n
        present = set()
        edges = []
        draws = 0
        budget = GENERATOR_PAIR_BUDGET_FACTOR * max(m, 1)
        while len(edges) < m and draws < budget:
            u = rng.randrange(n)
            v = rng.randrange(n)
            draws += 1
            if u == v or deg[u] >= 4 or deg[v] >= 4:
                continue
            key = (min(u, v), max(u, v))
            if key in present:
                continue
            present.add(key)
            deg[u] += 1
            deg[v] += 1
            edges.append((u, v))
        if len(edges) < m:
            continue
        g = Graph(n, edges)
        if g.is_connected():
            return g
    raise GraphError(
        f"could not generate a connected instance for n={n}, density={density} "
        f"within {GENERATOR_CONNECTIVITY_ATTEMPTS} attempts of "
        f"{GENERATOR_PAIR_BUDGET_FACTOR}*|E| pair draws each"
    )


def hard_family(i: int):
    """Family of degree-3 graphs with exponentially many simple cycles that
    admit a shape leaving exactly one cycle (the outer one) incomplete.

    Instance ``i`` has 30+6i vertices and 35+7i edges: an outer cycle plus
    5+i chordal 5-edge paths, each chord internally using all four labels.
    Returns (graph, shape).
    """
    if i < 1:
        raise GraphError("family index must be >= 1")
    names = {}

    def vid(name):
        if name not in names:
            names[name] = len(names)
        return names[name]

    # outer cycle order: v1..v5, y1..yi, u5..u1, xi..x1
    outer = (
        [f"v{k}" for k in range(1, 6)]
        + [f"y{k}" for k in range(1, i + 1)]
        + [f"u{k}" for k in range(5, 0, -1)]
        + [f"x{k}" for k in range(i, 0, -1)]
    )
    for name in outer:
        vid(name)

    edges = []
    labels = {}

    def add(a, b, lab):
        e = len(edges)
        edges.append((vid(a), vid(b)))
        labels[e] = lab
        return e

    def add_path(seq, labs):
        assert len(seq) == len(labs) + 1
        for k, lab in enumerate(labs):
            add(seq[k], seq[k + 1], lab)

    add_path(["x1", "v1", "v2", "v3", "v4", "v5", "y1"], [R, D, L, L, D, R])
    add_path([f"y{k}" for k in range(1, i + 1)], [R] * (i - 1))
    add_path([f"y{i}", "u5", "u4", "u3", "u2", "u1", f"x{i}"], [R, D, L, L, D, R])
    add_path([f"x{k}" for k in range(i, 0, -1)], [R] * (i - 1))

    def add_chord(a, b, labs, tag):
        inner = [f"{tag}_{k}" for k in range(1, 5)]
        add_path([a] + inner + [b], labs)

    add_chord("v1", "v5", [R, U, L, D, R], "pv1v5")
    add_chord("u1", "u5", [D, R, U, L, D], "pu1u5")
    add_chord("v2", "u2", [D, R, U, L, D], "pv2u2")
    add_chord("v3", "u3", [U, R, D, L, U], "pv3u3")
    add_chord("v4", "u4", [U, R, D, L, U], "pv4u4")
    for j in range(1, i + 1):
        add_chord(f"x{j}", f"y{j}", [U, R, D, L, U], f"px{j}y{j}")

    g = Graph(len(names), edges)
    return g, Shape(labels)


# -- file formats ----------------------------------------------------------


def to_edge_list(g: Graph) -> str:
    lines = [f"{g.num_vertices} {g.num_edges}"]
    lines.extend(f"{t} {h}" for t, h in g.edges)
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    tokens = [ln for ln in (ln.strip() for ln in text.splitlines()) if ln and not ln.startswith("#")]
    if not tokens:
        raise GraphError("empty graph file")
    try:
        n, m = (int(x) for x in tokens[0].split())
    except ValueError as exc:
        raise GraphError(f"bad header line {tokens[0]!r}") from exc
    if len(tokens) - 1 != m:
        raise GraphError(f"expected {m} edge lines, found {len(tokens) - 1}")
    edges = []
    for ln in tokens[1:]:
        try:
            t, h = (int(x) for x in ln.split())
        except ValueError as exc:
            raise GraphError(f"bad edge line {ln!r}") from exc
        edges.append((t, h))
    return Graph(n, edges)


_GML_NODE = re.compile(r"node\s*\[(.*?)\]", re.S)
_GML_EDGE = re.compile(r"edge\s*\[(.*?)\]", re.S)


def _gml_field(block: str, key: str):
    m = re.search(rf"\b{key}\s+(-?\d+(?:\.\d+)?)", block)
    return m.group(1) if m else None


def parse_gml(text: str):
    """Minimal GML subset: node blocks with id (and optional x/y), edge
    blocks with source/target.  Returns (graph, coords) where coords maps
    vertex ids to floats when present."""
    node_ids = []
    coords = {}
    for m in _GML_NODE.finditer(text):
        block = m.group(1)
        raw = _gml_field(block, "id")
        if raw is None:
            raise GraphError("GML node block without id")
        nid = int(raw)
        node_ids.append(nid)
        x = _gml_field(block, "x")
        y = _gml_field(block, "y")
        if x is not None and y is not None:
            coords[nid] = (float(x), float(y))
    if not node_ids:
        raise GraphError("no node blocks found")
    remap = {nid: k for k, nid in enumerate(sorted(node_ids))}
    edges = []
    for m in _GML_EDGE.finditer(text):
        block = m.group(1)
        s = _gml_field(block, "source")
        t = _gml_field(block, "target")
        if s is None or t is None:
            raise GraphError("GML edge block without source/target")
        edges.append((remap[int(s)], remap[int(t)]))
    g = Graph(len(node_ids), edges)
    return g, {remap[k]: v for k, v in coords.items()}
