"""The shape-then-draw control loop.

Starting from the cycle basis of the input, a CNF over the edge direction
labels is solved.  Unsatisfiability means some constrained cycle cannot use
all four directions, so the most conflict-involved edge is subdivided and
the formula rebuilt over the grown graph.  A satisfying shape is then
checked for drawability; an order cycle in an auxiliary graph yields a
direction-deficient graph cycle which joins the constraint set, and the
solver resumes incrementally.  The loop ends with a drawable shape of a
subdivision of the input.

Every run is deterministic: same input and configuration, same report,
byte for byte.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import cnf
from .drawability import extract_incomplete_cycle, test_drawable
from .graph import Graph, GraphError, canonical_cycle, cycle_basis, subdivide_edge
from .sat import IncrementalSession, SolverConfig
from .shape import Shape

SUBDIVISION_CAP_FACTOR = 10
CYCLE_CAP_FACTOR = 50


class PipelineError(RuntimeError):
    pass


class IterationLimitError(PipelineError):
    """A safety cap fired; carries the loop state for inspection."""

    def __init__(self, message: str, state=None):
        super().__init__(message)
        self.state = state


@dataclass(frozen=True)
class PipelineConfig:
    seed: int = 0
    max_subdivisions: Optional[int] = None  # default 10 * |E(input)|
    max_cycle_additions: Optional[int] = None  # default 50 * |E(input)|
    solver: SolverConfig = SolverConfig()


@dataclass
class Counters:
    cycles_added: int = 0
    dummies_added: int = 0
    sat_invocations: int = 0


@dataclass
class PipelineState:
    graph: Graph
    cycles: list
    counters: Counters
    subdivisions: list
    log_lines: list


@dataclass
class RunReport:
    graph: Graph  # final subdivision of the input
    shape: Shape
    orders: object  # TopologicalOrders of the final shape
    cycles: list  # final constrained cycle set
    counters: Counters
    subdivisions: list
    log_lines: list
    shape_seconds: float
    drawing_seconds: float


def rewrite_cycles(cycles: Sequence[tuple], rec) -> list:
    """Insert a subdivision's dummy vertex into every cycle using the edge."""
    out = []
    for cyc in cycles:
        n = len(cyc)
        hit = None
        for i in range(n):
            a, b = cyc[i], cyc[(i + 1) % n]
            if {a, b} == {rec.tail, rec.head}:
                hit = i
                break
        if hit is None:
            out.append(cyc)
        else:
            grown = list(cyc[: hit + 1]) + [rec.dummy_vertex] + list(cyc[hit + 1 :])
            out.append(canonical_cycle(grown))
    return out


def _cycle_clauses(f, graph, cycle):
    clauses = []
    for lab in cnf.LABEL_ORDER:
        lits = []
        for i, a in enumerate(cycle):
            b = cycle[(i + 1) % len(cycle)]
            lits.append(cnf.directed_literal(f, graph, a, b, lab))
        clauses.append(tuple(lits))
    return clauses


def run_sm(g: Graph, cfg: Optional[PipelineConfig] = None) -> RunReport:
    """Find a drawable shape for (a subdivision of) the input graph."""
    if not g.is_connected():
        raise GraphError("input graph must be connected")
    cfg = cfg or PipelineConfig()
    max_sub = cfg.max_subdivisions
    if max_sub is None:
        max_sub = SUBDIVISION_CAP_FACTOR * g.num_edges
    max_cyc = cfg.max_cycle_additions
    if max_cyc is None:
        max_cyc = CYCLE_CAP_FACTOR * g.num_edges

    state = PipelineState(
        graph=g,
        cycles=cycle_basis(g),
        counters=Counters(),
        subdivisions=[],
        log_lines=[],
    )
    shape_seconds = 0.0
    drawing_seconds = 0.0
    known = set(state.cycles)

    while True:
        formula = cnf.encode(state.graph, state.cycles)
        session = IncrementalSession(formula, cfg.solver)
        resubdivided = False
        while not resubdivided:
            t0 = time.perf_counter()
            outcome = session.solve()
            shape_seconds += time.perf_counter() - t0
            state.counters.sat_invocations += 1
            if not outcome.is_sat:
                edge = cnf.select_split_edge(formula, outcome.refutation, state.graph)
                state.log_lines.append(f"UNSAT split e={edge}")
                if state.counters.dummies_added >= max_sub:
                    raise IterationLimitError(
                        f"subdivision cap {max_sub} reached", state=state
                    )
                new_graph, rec = subdivide_edge(state.graph, edge)
                state.graph = new_graph
                state.subdivisions.append(rec)
                state.counters.dummies_added += 1
                state.cycles = rewrite_cycles(state.cycles, rec)
                known = set(state.cycles)
                resubdivided = True
                continue
            state.log_lines.append("SAT")
            shape = cnf.decode_model(formula, outcome.model)
            t0 = time.perf_counter()
            result = test_drawable(state.graph, shape)
            if result.drawable:
                drawing_seconds += time.perf_counter() - t0
                return RunReport(
                    graph=state.graph,
                    shape=shape,
                    orders=result,
                    cycles=state.cycles,
                    counters=state.counters,
                    subdivisions=state.subdivisions,
                    log_lines=state.log_lines,
                    shape_seconds=shape_seconds,
                    drawing_seconds=drawing_seconds,
                )
            cyc = canonical_cycle(extract_incomplete_cycle(state.graph, shape, result))
            drawing_seconds += time.perf_counter() - t0
            state.log_lines.append(f"ADD_CYCLE len={len(cyc)}")
            if cyc in known:
                raise PipelineError(
                    f"witness cycle {cyc} extracted twice; constraint had no effect"
                )
            if state.counters.cycles_added >= max_cyc:
                raise IterationLimitError(f"cycle cap {max_cyc} reached", state=state)
            known.add(cyc)
            state.cycles.append(cyc)
            state.counters.cycles_added += 1
            for clause in _cycle_clauses(formula, state.graph, cyc):
                session.add_clause(clause)
