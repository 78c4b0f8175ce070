import itertools
import random

import pytest

from orthodraw.cnf import CnfFormula
from orthodraw.sat import (
    IncrementalSession,
    Solver,
    SolverConfig,
    SolverError,
    _luby,
    check_model,
    solve,
    solve_incremental,
)


def F(num_vars, clauses):
    return CnfFormula(num_vars=num_vars, clauses=[tuple(c) for c in clauses])


def brute_force_sat(num_vars, clauses):
    for bits in itertools.product([False, True], repeat=num_vars):
        if all(any((lit > 0) == bits[abs(lit) - 1] for lit in cl) for cl in clauses):
            return True
    return False


def random_formula(rng):
    nv = rng.randint(3, 8)
    clauses = []
    for _ in range(rng.randint(2, 30)):
        width = min(rng.randint(1, 4), nv)
        vs = rng.sample(range(1, nv + 1), width)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return nv, clauses


def test_luby_prefix():
    assert [_luby(i) for i in range(1, 16)] == [1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]


def test_trivial_outcomes():
    assert solve(F(1, [(1,)])).model == {1: True}
    assert solve(F(1, [(-1,)])).model == {1: False}
    out = solve(F(1, [(1,), (-1,)]))
    assert out.status == "UNSAT"
    assert set(out.refutation.core) == {0, 1}
    assert out.refutation.var_counts == {1: 2}


def test_empty_clause_is_unsat():
    out = solve(F(2, [(1, 2), ()]))
    assert out.status == "UNSAT"


def test_literal_out_of_range():
    with pytest.raises(SolverError):
        solve(F(2, [(3,)]))
    with pytest.raises(SolverError):
        solve(F(2, [(0,)]))


def test_agrees_with_brute_force():
    rng = random.Random(42)
    for _ in range(300):
        nv, clauses = random_formula(rng)
        out = solve(F(nv, clauses))
        assert out.is_sat == brute_force_sat(nv, clauses)
        if out.is_sat:
            assert check_model(clauses, out.model)


def test_unsat_core_clauses_are_unsatisfiable():
    """Replaying only the original core clauses must still be UNSAT."""
    rng = random.Random(7)
    checked = 0
    while checked < 40:
        nv, clauses = random_formula(rng)
        out = solve(F(nv, clauses))
        if out.is_sat:
            continue
        core = [clauses[c] for c in out.refutation.original_core]
        assert core, "empty original core"
        assert not brute_force_sat(nv, core)
        checked += 1


def test_core_var_counts_match_core_clauses():
    out = solve(F(3, [(1, 2), (1, -2), (-1, 3), (-1, -3)]))
    assert out.status == "UNSAT"
    r = out.refutation
    counts = {}
    for cid in r.core:
        for lit in r.clause_lits[cid]:
            counts[abs(lit)] = counts.get(abs(lit), 0) + 1
    assert counts == r.var_counts


def test_determinism():
    rng = random.Random(8)
    for _ in range(40):
        nv, clauses = random_formula(rng)
        a = solve(F(nv, clauses)).to_text()
        b = solve(F(nv, clauses)).to_text()
        assert a == b


def test_incremental_matches_monolithic():
    rng = random.Random(9)
    for _ in range(60):
        nv, clauses = random_formula(rng)
        cut = rng.randint(0, len(clauses))
        inc = solve_incremental(F(nv, clauses[:cut]), clauses[cut:])
        mono = solve(F(nv, clauses))
        assert inc.is_sat == mono.is_sat
        if inc.is_sat:
            assert check_model(clauses, inc.model)


def test_incremental_session_tightens():
    sess = IncrementalSession(F(2, [(1, 2)]))
    assert sess.solve().is_sat
    sess.add_clause((-1,))
    out = sess.solve()
    assert out.is_sat and out.model[2] is True
    sess.add_clause((-2,))
    final = sess.solve()
    assert final.status == "UNSAT"
    # session stays UNSAT on repeated calls
    assert sess.solve().status == "UNSAT"


def test_solver_handles_duplicate_literals_in_model_check():
    out = solve(F(2, [(1, 1, 2), (-2,)]))
    assert out.is_sat
    assert out.model[1] is True


def test_reduction_keeps_answers_correct():
    # force many conflicts so the clause database gets reduced
    cfg = SolverConfig(reduce_base=50, reduce_inc=20)
    rng = random.Random(10)
    for _ in range(60):
        nv, clauses = random_formula(rng)
        out = solve(F(nv, clauses), cfg)
        assert out.is_sat == brute_force_sat(nv, clauses)


def test_refutation_core_closed_under_derivation():
    rng = random.Random(11)
    checked = 0
    while checked < 25:
        nv, clauses = random_formula(rng)
        f = F(nv, clauses)
        sess = IncrementalSession(f)
        out = sess.solve()
        if out.is_sat:
            continue
        solver = sess.solver
        for cid in out.refutation.core:
            if solver.learned[cid]:
                assert set(solver.derivation[cid]) <= set(out.refutation.core)
        checked += 1
