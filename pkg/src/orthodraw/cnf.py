"""CNF encoding of the cycle-completeness shape constraints.

Four variables per edge (one per direction label, edge-major numbering in
label order L, R, D, U).  Three clause groups: exactly-one label per edge,
per-vertex direction exclusivity (relaxed for degree > 4 to "every direction
used at least once"), and one all-four-labels group per constrained cycle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .shape import D, L, LABELS, OPPOSITE, R, Shape, U

LABEL_ORDER = (L, R, D, U)
_LABEL_POS = {lab: k for k, lab in enumerate(LABEL_ORDER)}


class EncodingError(ValueError):
    pass


@dataclass
class CnfFormula:
    num_vars: int
    clauses: list
    num_edges: int = 0

    def var(self, edge: int, label: str) -> int:
        return 4 * edge + _LABEL_POS[label] + 1

    def edge_label_of_var(self, var: int):
        return (var - 1) // 4, LABEL_ORDER[(var - 1) % 4]

    def edge_vars(self, edge: int) -> tuple:
        base = 4 * edge
        return (base + 1, base + 2, base + 3, base + 4)


def directed_literal(f: CnfFormula, graph, u: int, v: int, label: str) -> int:
    """Variable meaning "the edge leaves u toward v in direction label"."""
    e = graph.edge_between(u, v)
    if e is None:
        raise EncodingError(f"({u}, {v}) is not an edge")
    t, _ = graph.edges[e]
    return f.var(e, label if u == t else OPPOSITE[label])


def encode(graph, cycles: Sequence[Sequence[int]]) -> CnfFormula:
    f = CnfFormula(num_vars=4 * graph.num_edges, clauses=[], num_edges=graph.num_edges)
    clauses = f.clauses

    # one label per edge: an at-least-one clause and six pairwise exclusions
    for e in range(graph.num_edges):
        l, r, d, u = (f.var(e, lab) for lab in LABEL_ORDER)
        clauses.append((l, r, d, u))
        clauses.append((-l, -r))
        clauses.append((-d, -l))
        clauses.append((-d, -r))
        clauses.append((-u, -l))
        clauses.append((-u, -r))
        clauses.append((-u, -d))

    # vertex constraints
    for v in range(graph.num_vertices):
        nbrs = graph.neighbors(v)
        deg = len(nbrs)
        if deg <= 1:
            continue
        if deg == 4 or deg > 4:
            # all four directions must be used; with exactly 4 edges this
            # also implies pairwise distinctness
            for lab in LABEL_ORDER:
                clauses.append(tuple(directed_literal(f, graph, v, w, lab) for w, _ in nbrs))
        else:
            for i in range(deg):
                for j in range(i + 1, deg):
                    wi, wj = nbrs[i][0], nbrs[j][0]
                    for lab in LABEL_ORDER:
                        clauses.append(
                            (
                                -directed_literal(f, graph, v, wi, lab),
                                -directed_literal(f, graph, v, wj, lab),
                            )
                        )

    # cycle completeness
    for cyc in cycles:
        for lab in LABEL_ORDER:
            lits = []
            for i, a in enumerate(cyc):
                b = cyc[(i + 1) % len(cyc)]
                lits.append(directed_literal(f, graph, a, b, lab))
            clauses.append(tuple(lits))

    return f


def expected_clause_count(graph, cycles: Sequence[Sequence[int]]) -> int:
    """Closed-form clause count of :func:`encode`."""
    total = 7 * graph.num_edges
    for v in range(graph.num_vertices):
        deg = graph.degree(v)
        if deg >= 4:
            total += 4
        elif deg >= 2:
            total += 4 * (deg * (deg - 1) // 2)
    total += 4 * len(cycles)
    return total


def decode_model(f: CnfFormula, model: dict) -> Shape:
    """Turn a satisfying assignment into a shape; rejects models violating
    the exactly-one clauses (which would indicate a solver bug)."""
    labels = {}
    for e in range(f.num_edges):
        true_labels = [lab for lab in LABEL_ORDER if model.get(f.var(e, lab))]
        if len(true_labels) != 1:
            raise EncodingError(
                f"model assigns {len(true_labels)} labels to edge {e}; "
                "exactly-one constraint violated"
            )
        labels[e] = true_labels[0]
    return Shape(labels)


def shape_assignment(f: CnfFormula, shape: Shape) -> dict:
    """The model implied by a shape (for round-trip checks)."""
    model = {}
    for e in range(f.num_edges):
        for lab in LABEL_ORDER:
            model[f.var(e, lab)] = shape.labels[e] == lab
    return model


def select_split_edge(f: CnfFormula, refutation, graph=None) -> int:
    """Edge whose four variables participate most in the refutation.

    Ties break toward the smallest edge id.  The chosen edge is guaranteed
    to appear in at least one core clause.

    When ``graph`` is given, edges descending from less-subdivided base
    edges are preferred over raw participation: a subdivided chain's
    variables keep multiplying inside later refutations, and always
    re-splitting the loudest chain can starve the edge whose split would
    actually resolve the conflict.
    """
    if not refutation.core:
        raise EncodingError("empty refutation")
    participating = set()
    for cid in refutation.core:
        for lit in refutation.clause_lits[cid]:
            var = abs(lit)
            if 1 <= var <= f.num_vars:
                participating.add((var - 1) // 4)
    if not participating:
        raise EncodingError("refutation references no edge variables")
    best = None
    best_key = None
    for e in sorted(participating):
        score = sum(refutation.var_counts.get(v, 0) for v in f.edge_vars(e))
        prior_splits = (
            len(graph.base_chain(graph.origin[e])) - 2 if graph is not None else 0
        )
        key = (prior_splits, -score, e)
        if best_key is None or key < best_key:
            best, best_key = e, key
    return best


# -- DIMACS ---------------------------------------------------------------


def to_dimacs(f: CnfFormula, graph=None) -> str:
    lines = []
    if graph is not None:
        lines.append("c variable map: var = 4*edge + offset(L=1,R=2,D=3,U=4)")
        for e, (t, h) in enumerate(graph.edges):
            vars_ = " ".join(str(f.var(e, lab)) for lab in LABEL_ORDER)
            lines.append(f"c edge {e} ({t}->{h}) vars L R D U = {vars_}")
    lines.append(f"p cnf {f.num_vars} {len(f.clauses)}")
    for cl in f.clauses:
        lines.append(" ".join(str(x) for x in cl) + " 0")
    return "\n".join(lines) + "\n"


def from_dimacs(text: str) -> CnfFormula:
    num_vars = 0
    clauses = []
    cur = []
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("c"):
            continue
        if ln.startswith("p"):
            parts = ln.split()
            if len(parts) != 4 or parts[1] != "cnf" or not parts[2].isdigit():
                raise EncodingError(f"bad DIMACS header {ln!r}")
            num_vars = int(parts[2])
            continue
        for tok in ln.split():
            try:
                lit = int(tok)
            except ValueError as exc:
                raise EncodingError(f"bad DIMACS literal {tok!r}") from exc
            if lit == 0:
                clauses.append(tuple(cur))
                cur = []
            else:
                cur.append(lit)
    if cur:
        raise EncodingError("unterminated clause in DIMACS input")
    return CnfFormula(num_vars=num_vars, clauses=clauses, num_edges=num_vars // 4)
