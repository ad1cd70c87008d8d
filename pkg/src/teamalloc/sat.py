"""A deterministic CDCL satisfiability core.

Supports incremental clause addition and solving under assumptions with
assumption-core extraction, the two features the optimization and
explanation layers are built on.  Design: two-watched literals with a
dedicated binary-implication store, first-UIP clause learning, phase
saving, VSIDS-style variable activities and Luby restarts.  No randomness
is used anywhere, so identical inputs always produce identical outcomes.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from heapq import heappush, heappop

SAT = "SAT"
UNSAT = "UNSAT"
TIMEOUT = "TIMEOUT"


@dataclass
class SolveStats:
    conflicts: int = 0
    decisions: int = 0
    propagations: int = 0
    wall_time: float = 0.0


@dataclass
class SolveOutcome:
    status: str
    model: list[bool] | None = None  # indexed by variable, entry 0 unused
    core: list[int] = field(default_factory=list)
    stats: SolveStats = field(default_factory=SolveStats)

    def lit_true(self, lit: int) -> bool:
        assert self.model is not None
        return self.model[lit] if lit > 0 else not self.model[-lit]


def _idx(lit: int) -> int:
    return lit << 1 if lit > 0 else ((-lit) << 1) | 1


def luby(i: int) -> int:
    """The reluctant-doubling sequence 1,1,2,1,1,2,4,... (0-based index)."""
    i += 1
    while True:
        k = i.bit_length()
        if i == (1 << k) - 1:
            return 1 << (k - 1)
        i -= (1 << (k - 1)) - 1


class Solver:
    """Incremental CDCL solver over clauses with integer literals.

    Variables are positive integers; a literal is ``v`` or ``-v``.  A
    solver instance is single-threaded: do not share one handle across
    concurrent solves.
    """

    RESTART_BASE = 128
    VAR_DECAY = 0.95

    def __init__(self, num_vars: int = 0):
        self.num_vars = 0
        self.ok = True
        self.assigns: list[int] = [0]  # 0 unset, 1 true, -1 false
        self.levels: list[int] = [0]
        self.reasons: list[list[int] | None] = [None]
        self.saved_phase: list[bool] = [False]
        self.activity: list[float] = [0.0]
        self.watches: list[list[list[int]]] = [[], []]
        self.bins: list[list[tuple[int, list[int]]]] = [[], []]
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.var_inc = 1.0
        self.heap: list[tuple[float, int]] = []
        self.conflicts = 0
        self.decisions = 0
        self.propagations = 0
        self._seen: list[bool] = [False]
        if num_vars:
            self.ensure_vars(num_vars)

    # ---- variables -------------------------------------------------

    def new_var(self) -> int:
        self.num_vars += 1
        self.assigns.append(0)
        self.levels.append(0)
        self.reasons.append(None)
        self.saved_phase.append(False)
        self.activity.append(0.0)
        self._seen.append(False)
        self.watches.append([])
        self.watches.append([])
        self.bins.append([])
        self.bins.append([])
        heappush(self.heap, (0.0, self.num_vars))
        return self.num_vars

    def ensure_vars(self, n: int) -> None:
        while self.num_vars < n:
            self.new_var()

    def set_phase(self, var: int, value: bool) -> None:
        """Hint the polarity tried first when branching on var."""
        self.saved_phase[var] = value

    # ---- clause addition -------------------------------------------

    def add_clause(self, lits) -> None:
        """Add a permanent clause; must be called with no solve in flight.

        An empty (or root-falsified) clause marks the solver permanently
        unsatisfiable.
        """
        if not self.ok:
            return
        assert not self.trail_lim, "add_clause only at decision level 0"
        out: list[int] = []
        seen: set[int] = set()
        for lit in lits:
            if -lit in seen:
                return  # tautology
            if lit in seen:
                continue
            self.ensure_vars(abs(lit))
            val = self._value(lit)
            if val == 1 and self.levels[abs(lit)] == 0:
                return  # already satisfied at root
            if val == -1 and self.levels[abs(lit)] == 0:
                continue  # falsified at root, drop
            seen.add(lit)
            out.append(lit)
        if not out:
            self.ok = False
            return
        if len(out) == 1:
            if self._value(out[0]) == 0:
                self._enqueue(out[0], None)
                if self._propagate() is not None:
                    self.ok = False
            elif self._value(out[0]) == -1:
                self.ok = False
            return
        if len(out) == 2:
            a, b = out
            self.bins[_idx(a)].append((b, out))
            self.bins[_idx(b)].append((a, out))
            return
        self.watches[_idx(out[0])].append(out)
        self.watches[_idx(out[1])].append(out)

    # ---- assignment helpers ----------------------------------------

    def _value(self, lit: int) -> int:
        a = self.assigns[lit] if lit > 0 else self.assigns[-lit]
        return a if lit > 0 else -a

    def _enqueue(self, lit: int, reason: list[int] | None) -> None:
        v = lit if lit > 0 else -lit
        self.assigns[v] = 1 if lit > 0 else -1
        self.levels[v] = len(self.trail_lim)
        self.reasons[v] = reason
        self.trail.append(lit)

    def _cancel_until(self, level: int) -> None:
        if len(self.trail_lim) <= level:
            return
        bound = self.trail_lim[level]
        assigns = self.assigns
        for k in range(len(self.trail) - 1, bound - 1, -1):
            lit = self.trail[k]
            v = lit if lit > 0 else -lit
            self.saved_phase[v] = lit > 0
            assigns[v] = 0
            self.reasons[v] = None
            heappush(self.heap, (-self.activity[v], v))
        del self.trail[bound:]
        del self.trail_lim[level:]
        self.qhead = len(self.trail)

    # ---- propagation -----------------------------------------------

    def _propagate(self) -> list[int] | None:
        assigns = self.assigns
        while self.qhead < len(self.trail):
            p = self.trail[self.qhead]
            self.qhead += 1
            self.propagations += 1
            np_idx = _idx(-p)
            for q, cl in self.bins[np_idx]:
                a = assigns[q] if q > 0 else -assigns[-q]
                if a == -1:
                    return cl
                if a == 0:
                    self._enqueue(q, cl)
            ws = self.watches[np_idx]
            i = j = 0
            n = len(ws)
            while i < n:
                c = ws[i]
                i += 1
                if c[0] == -p:
                    c[0], c[1] = c[1], c[0]
                first = c[0]
                v0 = assigns[first] if first > 0 else -assigns[-first]
                if v0 == 1:
                    ws[j] = c
                    j += 1
                    continue
                moved = False
                for k in range(2, len(c)):
                    lk = c[k]
                    if (assigns[lk] if lk > 0 else -assigns[-lk]) != -1:
                        c[1], c[k] = c[k], c[1]
                        self.watches[_idx(c[1])].append(c)
                        moved = True
                        break
                if moved:
                    continue
                ws[j] = c
                j += 1
                if v0 == -1:
                    while i < n:
                        ws[j] = ws[i]
                        j += 1
                        i += 1
                    del ws[j:]
                    return c
                self._enqueue(first, c)
            del ws[j:]
        return None

    # ---- activities -------------------------------------------------

    def _bump(self, v: int) -> None:
        self.activity[v] += self.var_inc
        if self.activity[v] > 1e100:
            scale = 1e-100
            for u in range(1, self.num_vars + 1):
                self.activity[u] *= scale
            self.var_inc *= scale
            self.heap = [
                (-self.activity[u], u)
                for u in range(1, self.num_vars + 1)
                if self.assigns[u] == 0
            ]
            self.heap.sort()
        else:
            heappush(self.heap, (-self.activity[v], v))

    def _pick_branch_var(self) -> int | None:
        while self.heap:
            negact, v = heappop(self.heap)
            if self.assigns[v] == 0 and -negact == self.activity[v]:
                return v
        for v in range(1, self.num_vars + 1):  # safety net, normally dead
            if self.assigns[v] == 0:
                return v
        return None

    # ---- conflict analysis -----------------------------------------

    def _analyze(self, confl: list[int]) -> tuple[list[int], int]:
        seen = self._seen
        learnt: list[int] = [0]
        counter = 0
        p = 0
        cl: list[int] | None = confl
        index = len(self.trail) - 1
        dl = len(self.trail_lim)
        while True:
            assert cl is not None
            for q in cl:
                if q == p:
                    continue
                v = q if q > 0 else -q
                if not seen[v] and self.levels[v] > 0:
                    seen[v] = True
                    self._bump(v)
                    if self.levels[v] == dl:
                        counter += 1
                    else:
                        learnt.append(q)
            while True:
                lit = self.trail[index]
                v = lit if lit > 0 else -lit
                if seen[v]:
                    break
                index -= 1
            p = self.trail[index]
            v = p if p > 0 else -p
            cl = self.reasons[v]
            seen[v] = False
            counter -= 1
            index -= 1
            if counter == 0:
                break
        learnt[0] = -p
        for q in learnt[1:]:
            seen[abs(q)] = False
        if len(learnt) == 1:
            return learnt, 0
        # move a literal from the backjump level into the watch position
        max_i = 1
        for k in range(2, len(learnt)):
            if self.levels[abs(learnt[k])] > self.levels[abs(learnt[max_i])]:
                max_i = k
        learnt[1], learnt[max_i] = learnt[max_i], learnt[1]
        return learnt, self.levels[abs(learnt[1])]

    def _attach_learnt(self, learnt: list[int], bt_level: int) -> None:
        self._cancel_until(bt_level)
        if len(learnt) == 1:
            self._enqueue(learnt[0], None)
        elif len(learnt) == 2:
            a, b = learnt
            self.bins[_idx(a)].append((b, learnt))
            self.bins[_idx(b)].append((a, learnt))
            self._enqueue(learnt[0], learnt)
        else:
            self.watches[_idx(learnt[0])].append(learnt)
            self.watches[_idx(learnt[1])].append(learnt)
            self._enqueue(learnt[0], learnt)

    def _analyze_final(self, p: int) -> list[int]:
        """p is an assumption whose value is false; collect the failing core."""
        core = [p]
        if not self.trail_lim:
            return core
        seen = self._seen
        seen[abs(p)] = True
        for k in range(len(self.trail) - 1, self.trail_lim[0] - 1, -1):
            lit = self.trail[k]
            v = lit if lit > 0 else -lit
            if not seen[v]:
                continue
            r = self.reasons[v]
            if r is None:
                core.append(lit)
            else:
                for q in r:
                    u = q if q > 0 else -q
                    if u != v and self.levels[u] > 0:
                        seen[u] = True
            seen[v] = False
        seen[abs(p)] = False
        return core

    # ---- main search ------------------------------------------------

    def solve(self, assumptions=(), budget: float | None = None) -> SolveOutcome:
        """Solve under the given assumption literals.

        Returns SAT with a total model, UNSAT with a core drawn from the
        assumptions, or TIMEOUT once the wall-clock budget (seconds) runs
        out.  The solver is left at decision level 0 and can be reused.
        """
        t0 = time.monotonic()
        deadline = t0 + budget if budget is not None else None
        base = SolveStats(self.conflicts, self.decisions, self.propagations)
        assumptions = list(assumptions)

        def finish(status, model=None, core=()):
            return SolveOutcome(
                status,
                model=model,
                core=list(core),
                stats=SolveStats(
                    self.conflicts - base.conflicts,
                    self.decisions - base.decisions,
                    self.propagations - base.propagations,
                    time.monotonic() - t0,
                ),
            )

        if not self.ok:
            return finish(UNSAT)
        for lit in assumptions:
            self.ensure_vars(abs(lit))
        self._cancel_until(0)
        if self._propagate() is not None:
            self.ok = False
            return finish(UNSAT)

        restarts = 0
        conflicts_here = 0
        limit = luby(restarts) * self.RESTART_BASE
        while True:
            confl = self._propagate()
            if confl is not None:
                self.conflicts += 1
                conflicts_here += 1
                if not self.trail_lim:
                    self.ok = False
                    return finish(UNSAT)
                learnt, bt = self._analyze(confl)
                self._attach_learnt(learnt, bt)
                self.var_inc /= self.VAR_DECAY
                if deadline is not None and time.monotonic() > deadline:
                    self._cancel_until(0)
                    return finish(TIMEOUT)
                continue
            if conflicts_here >= limit:
                restarts += 1
                conflicts_here = 0
                limit = luby(restarts) * self.RESTART_BASE
                self._cancel_until(0)
                continue
            if deadline is not None and time.monotonic() > deadline:
                self._cancel_until(0)
                return finish(TIMEOUT)
            next_lit = 0
            while len(self.trail_lim) < len(assumptions):
                p = assumptions[len(self.trail_lim)]
                val = self._value(p)
                if val == 1:
                    self.trail_lim.append(len(self.trail))
                elif val == -1:
                    core = self._analyze_final(p)
                    self._cancel_until(0)
                    return finish(UNSAT, core=core)
                else:
                    next_lit = p
                    break
            if next_lit == 0:
                v = self._pick_branch_var()
                if v is None:
                    model = [False] + [self.assigns[u] == 1 for u in range(1, self.num_vars + 1)]
                    self._cancel_until(0)
                    return finish(SAT, model=model)
                next_lit = v if self.saved_phase[v] else -v
            self.decisions += 1
            self.trail_lim.append(len(self.trail))
            self._enqueue(next_lit, None)
