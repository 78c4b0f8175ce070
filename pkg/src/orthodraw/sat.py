"""Deterministic CDCL SAT solver with refutation reporting.

Conflict-driven clause learning with first-UIP learning, activity-based
decisions, phase saving and Luby restarts.  On unsatisfiability the solver
reports a core: the input and learned clauses reachable from the final
conflict through propagation reasons and learned-clause derivations,
together with per-variable participation counts over that core.

No preprocessing is done, so clause ids remain stable and map one-to-one
onto the formula handed in (learned clauses get the following ids).  Wide
learned clauses are periodically detached from propagation to keep it fast,
but their literals and derivations are kept so refutation cores stay
complete.  Identical input and configuration always produce an identical
outcome; the configured seed is kept for interface stability but no
randomized heuristic is used.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence


class SolverError(ValueError):
    pass


@dataclass(frozen=True)
class SolverConfig:
    seed: int = 0
    var_decay: float = 0.999
    luby_unit: int = 32
    reduce_base: int = 1000  # conflicts before the first clause DB reduction
    reduce_inc: int = 500
    keep_lbd: int = 3  # learned clauses at most this wide never get dropped
    deterministic: bool = True


@dataclass
class Refutation:
    core: tuple  # clause ids reachable from the final conflict
    original_core: tuple  # the subset that are input clauses
    var_counts: dict  # variable -> occurrences within core clauses
    clause_lits: dict  # clause id -> literal tuple (incl. learned clauses)

    def core_ids_text(self) -> str:
        return "\n".join(str(c) for c in self.core) + "\n"


@dataclass
class SatOutcome:
    status: str  # "SAT" or "UNSAT"
    model: Optional[dict] = None
    refutation: Optional[Refutation] = None

    @property
    def is_sat(self) -> bool:
        return self.status == "SAT"

    def to_text(self) -> str:
        """Canonical textual form, used for determinism checks."""
        if self.is_sat:
            bits = "".join("1" if self.model[v] else "0" for v in sorted(self.model))
            return f"SAT {bits}"
        r = self.refutation
        counts = ",".join(f"{v}:{r.var_counts[v]}" for v in sorted(r.var_counts))
        return f"UNSAT core={list(r.core)} counts={counts}"


def _luby(i: int) -> int:
    # Luby sequence 1,1,2,1,1,2,4,... (1-based)
    k = i.bit_length()
    if i == (1 << k) - 1:
        return 1 << (k - 1)
    return _luby(i - (1 << (k - 1)) + 1)


class Solver:
    """Single-use-or-incremental CDCL instance over a fixed variable count."""

    def __init__(self, num_vars: int, cfg: Optional[SolverConfig] = None):
        self.cfg = cfg or SolverConfig()
        self.nv = num_vars
        self.clauses = []  # clause id -> list of literals
        self.learned = []  # clause id -> bool
        self.derivation = {}  # learned clause id -> tuple of antecedent ids
        self.watches = [[] for _ in range(2 * num_vars + 2)]
        self.bin_watch = [[] for _ in range(2 * num_vars + 2)]
        self.val = [0] * (num_vars + 1)  # 0 unassigned, +1 true, -1 false
        self.level = [0] * (num_vars + 1)
        self.reason = [-1] * (num_vars + 1)
        # default phase True: deciding a label variable true immediately
        # propagates through the exactly-one and exclusivity clauses,
        # whereas a negative decision barely constrains anything
        self.phase = [True] * (num_vars + 1)
        self.trail = []
        self.trail_lim = []
        self.qhead = 0
        self.activity = [0.0] * (num_vars + 1)
        self.var_inc = 1.0
        self.heap = [(0.0, v) for v in range(1, num_vars + 1)]
        heapq.heapify(self.heap)
        self.pending_conflict = None
        self.proved_unsat = None  # cached refutation once UNSAT
        self.num_conflicts = 0
        self.num_decisions = 0
        self.lbd = {}  # learned clause id -> literal block distance
        self.detached = set()  # learned clauses dropped from propagation
        self.next_reduce = self.cfg.reduce_base
        self.num_reductions = 0

    # -- literal helpers ---------------------------------------------------

    def _widx(self, lit: int) -> int:
        return 2 * lit if lit > 0 else -2 * lit + 1

    def _lit_val(self, lit: int) -> int:
        v = self.val[lit] if lit > 0 else -self.val[-lit]
        return v

    @property
    def decision_level(self) -> int:
        return len(self.trail_lim)

    # -- clause management -------------------------------------------------

    def add_clause(self, lits: Iterable[int], learned: bool = False) -> int:
        lits = list(lits)
        for lit in lits:
            if lit == 0 or abs(lit) > self.nv:
                raise SolverError(f"literal {lit} out of range (1..{self.nv})")
        if not learned:
            self.backtrack(0)
        cid = len(self.clauses)
        self.clauses.append(lits)
        self.learned.append(learned)
        if not lits:
            self.pending_conflict = cid
            return cid
        if len(lits) == 1:
            lit = lits[0]
            v = self._lit_val(lit)
            if v == -1 and self.decision_level == 0:
                self.pending_conflict = cid
            elif v == 0:
                self._enqueue(lit, cid)
            return cid
        if not learned:
            # watch two non-false literals when possible
            lits.sort(key=lambda l: (self._lit_val(l) == -1, abs(l)))
            if self._lit_val(lits[1]) == -1 and self._lit_val(lits[0]) != 1:
                if self._lit_val(lits[0]) == -1:
                    self.pending_conflict = cid
                else:
                    self._enqueue(lits[0], cid)
        if len(lits) == 2:
            # binary clauses get direct implication lists, no watch churn
            self.bin_watch[self._widx(lits[0])].append((lits[1], cid))
            self.bin_watch[self._widx(lits[1])].append((lits[0], cid))
        else:
            self.watches[self._widx(lits[0])].append(cid)
            self.watches[self._widx(lits[1])].append(cid)
        return cid

    # -- assignment --------------------------------------------------------

    def _enqueue(self, lit: int, reason_cid: int) -> None:
        v = abs(lit)
        self.val[v] = 1 if lit > 0 else -1
        self.level[v] = self.decision_level
        self.reason[v] = reason_cid
        self.trail.append(lit)

    def backtrack(self, target: int) -> None:
        if self.decision_level <= target:
            return
        limit = self.trail_lim[target]
        for lit in reversed(self.trail[limit:]):
            v = abs(lit)
            self.phase[v] = lit > 0
            self.val[v] = 0
            self.reason[v] = -1
            heapq.heappush(self.heap, (-self.activity[v], v))
        del self.trail[limit:]
        del self.trail_lim[target:]
        self.qhead = min(self.qhead, len(self.trail))

    # -- propagation -------------------------------------------------------

    def propagate(self) -> Optional[int]:
        # hot loop: locals instead of attribute lookups, value tests inlined
        val = self.val
        watches = self.watches
        bin_watch = self.bin_watch
        clauses = self.clauses
        trail = self.trail
        level = self.level
        reason = self.reason
        dl = len(self.trail_lim)
        while self.qhead < len(trail):
            p = trail[self.qhead]
            self.qhead += 1
            neg = -p
            nidx = 2 * neg if neg > 0 else -2 * neg + 1
            for other, cid in bin_watch[nidx]:
                ov = val[other] if other > 0 else -val[-other]
                if ov == 1:
                    continue
                if ov == -1:
                    self.qhead = len(trail)
                    return cid
                v = other if other > 0 else -other
                val[v] = 1 if other > 0 else -1
                level[v] = dl
                reason[v] = cid
                trail.append(other)
            wl = watches[nidx]
            confl = None
            i = j = 0
            n = len(wl)
            while i < n:
                cid = wl[i]
                i += 1
                lits = clauses[cid]
                if lits[0] == neg:
                    lits[0], lits[1] = lits[1], lits[0]
                first = lits[0]
                fv = val[first] if first > 0 else -val[-first]
                if fv == 1:
                    wl[j] = cid
                    j += 1
                    continue
                moved = False
                for k in range(2, len(lits)):
                    lk = lits[k]
                    if (val[lk] if lk > 0 else -val[-lk]) != -1:
                        lits[1], lits[k] = lk, lits[1]
                        watches[2 * lk if lk > 0 else -2 * lk + 1].append(cid)
                        moved = True
                        break
                if moved:
                    continue
                wl[j] = cid
                j += 1
                if fv == -1:
                    confl = cid
                    while i < n:
                        wl[j] = wl[i]
                        j += 1
                        i += 1
                    break
                # enqueue first as implied
                v = first if first > 0 else -first
                val[v] = 1 if first > 0 else -1
                level[v] = dl
                reason[v] = cid
                trail.append(first)
            del wl[j:]
            if confl is not None:
                self.qhead = len(trail)
                return confl
        return None

    # -- conflict analysis -------------------------------------------------

    def _bump(self, v: int) -> None:
        self.activity[v] += self.var_inc
        if self.activity[v] > 1e100:
            for u in range(1, self.nv + 1):
                self.activity[u] *= 1e-100
            self.var_inc *= 1e-100
        # assigned variables re-enter the heap on backtrack; pushing them
        # here would only pile up stale entries
        if self.val[v] == 0:
            heapq.heappush(self.heap, (-self.activity[v], v))

    def analyze(self, confl: int):
        """First-UIP learning; returns (learnt literals, backjump level, used ids)."""
        seen = [False] * (self.nv + 1)
        learnt = []
        used = [confl]
        counter = 0
        p = 0
        reason_cid = confl
        idx = len(self.trail) - 1
        cur_level = self.decision_level
        while True:
            for q in self.clauses[reason_cid]:
                v = abs(q)
                if q == p or seen[v] or self.level[v] == 0:
                    continue
                seen[v] = True
                self._bump(v)
                if self.level[v] == cur_level:
                    counter += 1
                else:
                    learnt.append(q)
            while not seen[abs(self.trail[idx])]:
                idx -= 1
            p = self.trail[idx]
            seen[abs(p)] = False
            idx -= 1
            counter -= 1
            if counter == 0:
                break
            reason_cid = self.reason[abs(p)]
            used.append(reason_cid)
        # drop literals implied by the rest of the clause (local minimization)
        kept = []
        for q in learnt:
            r = self.reason[abs(q)]
            if r < 0:
                kept.append(q)
                continue
            for x in self.clauses[r]:
                vx = abs(x)
                if vx != abs(q) and self.level[vx] != 0 and not seen[vx]:
                    kept.append(q)
                    break
            else:
                used.append(r)
        learnt = kept
        learnt.insert(0, -p)
        if len(learnt) == 1:
            blevel = 0
        else:
            # put the highest-level remaining literal second
            k = max(range(1, len(learnt)), key=lambda i: self.level[abs(learnt[i])])
            learnt[1], learnt[k] = learnt[k], learnt[1]
            blevel = self.level[abs(learnt[1])]
        return learnt, blevel, tuple(used)

    def _final_refutation(self, confl: int) -> Refutation:
        core = set()
        seen_vars = set()
        stack = [confl]
        while stack:
            cid = stack.pop()
            if cid in core:
                continue
            core.add(cid)
            if self.learned[cid]:
                stack.extend(self.derivation.get(cid, ()))
            for lit in self.clauses[cid]:
                v = abs(lit)
                if self.val[v] != 0 and self.level[v] == 0 and v not in seen_vars:
                    seen_vars.add(v)
                    r = self.reason[v]
                    if r >= 0:
                        stack.append(r)
        core_ids = tuple(sorted(core))
        counts = {}
        for cid in core_ids:
            for lit in self.clauses[cid]:
                v = abs(lit)
                counts[v] = counts.get(v, 0) + 1
        refutation = Refutation(
            core=core_ids,
            original_core=tuple(c for c in core_ids if not self.learned[c]),
            var_counts=counts,
            clause_lits={c: tuple(self.clauses[c]) for c in core_ids},
        )
        self.proved_unsat = refutation
        return refutation

    def _reduce_db(self) -> None:
        """Drop the least useful half of the droppable learned clauses.

        Runs at decision level 0.  Low-LBD and binary clauses stay, as do
        reasons of level-0 assignments.  Dropped clauses only leave the
        watch lists; their literals and derivations remain available for
        refutation cores.  The policy is deterministic.
        """
        pinned = {self.reason[abs(lit)] for lit in self.trail}
        candidates = [
            cid
            for cid in self.lbd
            if cid not in self.detached
            and len(self.clauses[cid]) > 2
            and self.lbd[cid] > self.cfg.keep_lbd
            and cid not in pinned
        ]
        candidates.sort(key=lambda c: (-self.lbd[c], -len(self.clauses[c]), c))
        for cid in candidates[: len(candidates) // 2]:
            lits = self.clauses[cid]
            for lit in (lits[0], lits[1]):
                self.watches[self._widx(lit)].remove(cid)
            self.detached.add(cid)
        self.num_reductions += 1
        self.next_reduce = (
            self.num_conflicts + self.cfg.reduce_base + self.cfg.reduce_inc * self.num_reductions
        )

    # -- main loop ---------------------------------------------------------

    def solve(self) -> SatOutcome:
        if self.proved_unsat is not None:
            return SatOutcome("UNSAT", refutation=self.proved_unsat)
        self.backtrack(0)
        if self.pending_conflict is not None:
            return SatOutcome("UNSAT", refutation=self._final_refutation(self.pending_conflict))
        conflicts_here = 0
        restart_no = 1
        budget = self.cfg.luby_unit * _luby(restart_no)
        while True:
            confl = self.propagate()
            if confl is not None:
                if self.decision_level == 0:
                    return SatOutcome("UNSAT", refutation=self._final_refutation(confl))
                learnt, blevel, used = self.analyze(confl)
                self.backtrack(blevel)
                cid = len(self.clauses)
                self.clauses.append(learnt)
                self.learned.append(True)
                self.derivation[cid] = used
                self.lbd[cid] = len({self.level[abs(q)] for q in learnt[1:]}) + 1
                if len(learnt) == 2:
                    self.bin_watch[self._widx(learnt[0])].append((learnt[1], cid))
                    self.bin_watch[self._widx(learnt[1])].append((learnt[0], cid))
                elif len(learnt) > 2:
                    self.watches[self._widx(learnt[0])].append(cid)
                    self.watches[self._widx(learnt[1])].append(cid)
                self._enqueue(learnt[0], cid)
                self.var_inc /= self.cfg.var_decay
                self.num_conflicts += 1
                conflicts_here += 1
                if conflicts_here >= budget:
                    conflicts_here = 0
                    restart_no += 1
                    budget = self.cfg.luby_unit * _luby(restart_no)
                    self.backtrack(0)
                    if self.num_conflicts >= self.next_reduce:
                        self._reduce_db()
                continue
            if len(self.trail) == self.nv:
                model = {v: self.val[v] == 1 for v in range(1, self.nv + 1)}
                return SatOutcome("SAT", model=model)
            # decide: highest activity, ties toward the smallest variable
            while True:
                _, v = heapq.heappop(self.heap)
                if self.val[v] == 0:
                    break
            self.num_decisions += 1
            self.trail_lim.append(len(self.trail))
            self._enqueue(v if self.phase[v] else -v, -1)


def evaluate_clause(clause: Sequence[int], model: dict) -> bool:
    return any((model.get(abs(l), False)) == (l > 0) for l in clause)


def check_model(clauses: Sequence[Sequence[int]], model: dict) -> bool:
    return all(evaluate_clause(cl, model) for cl in clauses)


class IncrementalSession:
    """A solver bound to one formula, accepting clause additions between
    solve calls.  Clause ids stay aligned with the formula's clause list
    followed by added clauses in order."""

    def __init__(self, formula, cfg: Optional[SolverConfig] = None):
        self.formula = formula
        self.cfg = cfg or SolverConfig()
        self.solver = Solver(formula.num_vars, self.cfg)
        self.num_input_clauses = 0
        for cl in formula.clauses:
            self.solver.add_clause(cl)
            self.num_input_clauses += 1

    def add_clause(self, lits: Sequence[int]) -> int:
        cid = self.solver.add_clause(list(lits))
        self.num_input_clauses += 1
        return cid

    def solve(self) -> SatOutcome:
        return self.solver.solve()


def solve(formula, cfg: Optional[SolverConfig] = None) -> SatOutcome:
    """Solve a formula from scratch."""
    return IncrementalSession(formula, cfg).solve()


def solve_incremental(formula, added_clauses: Sequence[Sequence[int]], cfg=None) -> SatOutcome:
    """Equivalent to solving the conjunction of ``formula`` and the added
    clauses."""
    session = IncrementalSession(formula, cfg)
    for cl in added_clauses:
        session.add_clause(cl)
    return session.solve()
