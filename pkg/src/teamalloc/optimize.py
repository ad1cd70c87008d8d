"""Objective layers over the SAT core.

Two objectives: minimize the number of used teams (descending linear
search over a reusable unary counter on the used flags) and maximize the
weight of allocated tasks (ascending search over a guarded weighted
counter on the allocation selectors).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import model as m
from .cardinality import build_totalizer, weighted_at_most
from .encode import OVERLAP, TASK_ALLOCATED, LabeledFormula
from .sat import SAT, TIMEOUT, UNSAT, SolveOutcome, SolveStats, Solver
from .verify import check_model

DEFAULT_BUDGET = 30.0


class HardUnsatisfiableError(RuntimeError):
    """The always-on constraints are contradictory on their own."""


class FormulaSolver:
    """Binds a LabeledFormula to an incremental solver handle.

    Clauses appended to the formula after construction are picked up on the
    next solve.  Every SAT answer is re-checked by the independent model
    verifier before being returned.
    """

    def __init__(self, formula: LabeledFormula, verify: bool = True):
        self.formula = formula
        self.solver = Solver()
        self.verify = verify
        self._clause_cursor = 0
        self._hinted = 0
        self.sync()

    def sync(self) -> None:
        f = self.formula
        self.solver.ensure_vars(f.var_count)
        for v in range(self._hinted + 1, f.var_count + 1):
            hint = f.phase_hints.get(v)
            if hint is not None:
                self.solver.set_phase(v, hint)
        self._hinted = f.var_count
        while self._clause_cursor < len(f.clauses):
            self.solver.add_clause(f.clauses[self._clause_cursor])
            self._clause_cursor += 1

    def solve(self, assumptions=(), budget: float | None = None) -> SolveOutcome:
        self.sync()
        outcome = self.solver.solve(assumptions, budget)
        if outcome.status == SAT and self.verify:
            check_model(self.formula, outcome.model, assumptions)
        return outcome


def _as_engine(formula_or_engine) -> FormulaSolver:
    if isinstance(formula_or_engine, FormulaSolver):
        return formula_or_engine
    return FormulaSolver(formula_or_engine)


@dataclass
class OptimalSolution:
    allocation: dict[str, str]
    used_teams: set[str]
    objective: int
    proven_optimal: bool
    stats: list[SolveStats] = field(default_factory=list)


@dataclass
class Infeasible:
    core: list[int] = field(default_factory=list)
    stats: list[SolveStats] = field(default_factory=list)


@dataclass
class Timeout:
    best: OptimalSolution | None
    stats: list[SolveStats] = field(default_factory=list)


@dataclass
class RelaxedSolution:
    allocation: dict[str, str]
    unallocated: list[str]
    satisfied_weight: int
    proven_optimal: bool
    stats: list[SolveStats] = field(default_factory=list)


@dataclass
class PriorityWeights:
    """Positive integer priority per activity; unspecified tasks weigh 1."""

    weights: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        for aid, w in self.weights.items():
            if not isinstance(w, int) or isinstance(w, bool) or w < 1:
                raise ValueError(f"weight for {aid} must be a positive integer")

    def of(self, activity_id: str) -> int:
        return self.weights.get(activity_id, 1)


def extract_allocation(formula: LabeledFormula, model: list[bool]) -> dict[str, str]:
    return {
        aid: tid for (aid, tid), v in formula.alloc_var.items() if model[v]
    }


def extract_used(formula: LabeledFormula, model: list[bool]) -> set[str]:
    return {tid for tid, v in formula.used_var.items() if model[v]}


def clique_lower_bound(formula: LabeledFormula, assumptions) -> int:
    """Teams provably needed: the largest time-conflict clique of enforced tasks.

    A task counts as enforced when its allocation group is hard or its
    selector appears in the assumptions.  Clique members pairwise conflict
    under the formula's own predicate, so they need distinct teams.
    """
    witness = _clique_witness(formula, assumptions)
    return len(witness)


def _overlap_fully_enforced(formula: LabeledFormula, active: set[int]) -> bool:
    if OVERLAP not in formula.cfg.soft_kinds:
        return True
    return all(
        sel is None or sel in active
        for label, sel in formula.groups.items()
        if label.kind == OVERLAP
    )


def _clique_witness(formula: LabeledFormula, assumptions) -> list[str]:
    """Largest enforced time-conflict clique, or [] when counting is unsound.

    The counting argument requires the overlap constraints between clique
    members to be active; when any overlap group is relaxed the empty
    witness disables all counting shortcuts.
    """
    active = set(assumptions)
    if not _overlap_fully_enforced(formula, active):
        return []
    selectors = {
        label.subject[0]: sel
        for label, sel in formula.groups.items()
        if label.kind == TASK_ALLOCATED
    }
    enforced_ids = {
        aid
        for aid, sel in selectors.items()
        if sel is None or sel in active
    }
    return m.largest_conflict_clique(
        formula.instance, enforced_ids, formula.cfg.strict_touch
    )


def solve_with_counting(
    engine: FormulaSolver, assumptions=(), budget: float | None = None
) -> SolveOutcome:
    """Solve under assumptions, trying the team-count refutation first.

    When the enforced tasks contain a time-conflict clique larger than the
    team count the formula is unsatisfiable by counting, and the clique's
    selectors form a valid assumption core; answering without search
    sidesteps pigeonhole refutations that clause learning cannot produce
    in reasonable time.
    """
    f = engine.formula
    witness = _clique_witness(f, assumptions)
    if len(witness) > len(f.instance.teams):
        active = set(assumptions)
        selectors = {
            label.subject[0]: sel
            for label, sel in f.groups.items()
            if label.kind == TASK_ALLOCATED
        }
        core = [
            selectors[aid]
            for aid in witness
            if selectors.get(aid) is not None and selectors[aid] in active
        ]
        return SolveOutcome(UNSAT, core=core)
    return engine.solve(assumptions, budget)


def used_counter_outputs(engine: FormulaSolver) -> list[int]:
    """Unary counter over the used flags; outputs[j-1] <-> at least j used.

    Built once per formula as hard clauses; bounds are then plain
    assumptions, so repeated optimizations never pollute the formula.
    """
    f = engine.formula
    outputs = getattr(f, "_used_counter", None)
    if outputs is None:
        lits = [f.used_var[t.id] for t in f.instance.teams]
        outputs = build_totalizer(lits, f.new_var, f.add_clause)
        f._used_counter = outputs
        engine.sync()
    return outputs


def minimize_used_teams(
    formula_or_engine,
    budget: float = DEFAULT_BUDGET,
    assumptions=None,
) -> OptimalSolution | Infeasible | Timeout:
    """Minimize the number of used teams by descending linear search.

    Each SAT answer with k used teams tightens the bound to k-1; UNSAT at
    k-1 proves optimum k.  The descent also stops, with optimality still
    proven, when k meets the combinatorial clique lower bound: refuting a
    bound below a large clique is a pigeonhole instance that clause
    learning cannot handle in reasonable time, while the counting argument
    is immediate.
    """
    engine = _as_engine(formula_or_engine)
    f = engine.formula
    if assumptions is None:
        assumptions = f.assumptions_all()
    deadline = time.monotonic() + budget
    stats: list[SolveStats] = []
    lb = clique_lower_bound(f, assumptions)
    if lb > len(f.instance.teams):
        return Infeasible(stats=stats)  # more concurrent enforced tasks than teams
    outputs = used_counter_outputs(engine)

    def remaining() -> float:
        return deadline - time.monotonic()

    if remaining() <= 0:
        return Timeout(None, stats)
    res = engine.solve(assumptions, remaining())
    stats.append(res.stats)
    if res.status == UNSAT:
        return Infeasible(core=res.core, stats=stats)
    if res.status == TIMEOUT:
        return Timeout(None, stats)

    def snapshot(model: list[bool], proven: bool) -> OptimalSolution:
        used = extract_used(f, model)
        return OptimalSolution(
            allocation=extract_allocation(f, model),
            used_teams=used,
            objective=len(used),
            proven_optimal=proven,
            stats=stats,
        )

    model = res.model
    k = len(extract_used(f, model))
    while k > lb:
        if remaining() <= 0:
            return Timeout(snapshot(model, False), stats)
        res = engine.solve(list(assumptions) + [-outputs[k - 1]], remaining())
        stats.append(res.stats)
        if res.status == UNSAT:
            break
        if res.status == TIMEOUT:
            return Timeout(snapshot(model, False), stats)
        model = res.model
        k = len(extract_used(f, model))
    return snapshot(model, True)


def maximize_weighted_allocation(
    formula_or_engine,
    weights: PriorityWeights | None = None,
    budget: float = DEFAULT_BUDGET,
    assumptions=None,
) -> RelaxedSolution:
    """Maximize the total weight of allocated tasks (weighted Max-CSP view).

    Allocation selectors are left free so every task is optional; the
    remaining assumptions (other soft kinds, overrides) stay enforced.
    Ascending search: each model raises the required weight by one until
    the bound is refuted.
    """
    engine = _as_engine(formula_or_engine)
    f = engine.formula
    weights = weights or PriorityWeights()
    task_labels = [l for l in f.groups if l.kind == TASK_ALLOCATED]
    if any(f.groups[l] is None for l in task_labels):
        raise ValueError("allocation groups must be soft to maximize over them")
    if assumptions is None:
        assumptions = [
            s
            for l, s in f.groups.items()
            if s is not None and l.kind != TASK_ALLOCATED
        ]
    deadline = time.monotonic() + budget
    stats: list[SolveStats] = []
    items = [(f.groups[l], weights.of(l.subject[0])) for l in task_labels]
    total = sum(w for _, w in items)

    def weight_of(model: list[bool]) -> int:
        return sum(w for s, w in items if model[s])

    def snapshot(model: list[bool], proven: bool) -> RelaxedSolution:
        alloc = extract_allocation(f, model)
        return RelaxedSolution(
            allocation=alloc,
            unallocated=[a.id for a in f.instance.activities if a.id not in alloc],
            satisfied_weight=weight_of(model),
            proven_optimal=proven,
            stats=stats,
        )

    res = engine.solve(assumptions, deadline - time.monotonic())
    stats.append(res.stats)
    if res.status == UNSAT:
        raise HardUnsatisfiableError(
            "always-on constraints are unsatisfiable even with all tasks optional"
        )
    if res.status == TIMEOUT:
        raise HardUnsatisfiableError("budget exhausted before the first model")
    model = res.model
    best = weight_of(model)
    while best < total:
        guard = f.new_var()
        # require satisfied weight >= best+1, i.e. missed weight <= total-best-1
        weighted_at_most(
            [(-s, w) for s, w in items],
            total - best - 1,
            guard,
            f.new_var,
            f.add_clause,
        )
        left = deadline - time.monotonic()
        if left <= 0:
            return snapshot(model, False)
        res = engine.solve(list(assumptions) + [guard], left)
        stats.append(res.stats)
        if res.status == UNSAT:
            return snapshot(model, True)
        if res.status == TIMEOUT:
            return snapshot(model, False)
        model = res.model
        best = weight_of(model)
    return snapshot(model, True)


def max_allocated_tasks(
    formula_or_engine, budget: float = DEFAULT_BUDGET, assumptions=None
) -> RelaxedSolution:
    """Size-maximal satisfiable subset of the allocation constraints."""
    return maximize_weighted_allocation(
        formula_or_engine, PriorityWeights(), budget, assumptions
    )
