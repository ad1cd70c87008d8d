"""Infeasibility analysis: MUS and MCS extraction plus rendering.

A MUS (minimal unsatisfiable subset) pinpoints one irreducible conflict; a
MCS (minimal correction subset) is a smallest-by-inclusion set of
constraints whose relaxation restores satisfiability.  Both operate on the
selector labels of a formula's soft groups and benefit from the
incremental solver: every UNSAT answer shrinks the working set to the
returned assumption core.
"""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field

from .encode import COMPATIBILITY, TASK_ALLOCATED, ConstraintLabel, LabeledFormula
from .optimize import DEFAULT_BUDGET, FormulaSolver, _as_engine, solve_with_counting
from .sat import SAT, TIMEOUT, UNSAT, SolveStats


class InputSatisfiableError(RuntimeError):
    """MUS requested but the constraints are satisfiable."""


class HardCoreConflictError(RuntimeError):
    """MCS requested but the always-on constraints alone are unsatisfiable."""


@dataclass
class Mus:
    labels: list[ConstraintLabel]
    minimal: bool = True
    solver_calls: int = 0
    wall_time: float = 0.0


@dataclass
class Mcs:
    labels: list[ConstraintLabel]
    minimal: bool = True
    solver_calls: int = 0
    wall_time: float = 0.0


@dataclass
class ConflictExplanation:
    kind: str  # "MUS" or "MCS"
    labels: list[ConstraintLabel]
    text: dict[str, str]
    involved_activities: list[str]
    involved_teams: list[str]


def _ordered(formula: LabeledFormula, labels) -> list[ConstraintLabel]:
    order = {l: i for i, l in enumerate(formula.groups)}
    return sorted(labels, key=lambda l: order[l])


@contextmanager
def _hints_biased_off(engine: FormulaSolver):
    """Prefer the off branch for all hinted variables during a search.

    The construction hints push the solver to allocate every task, which
    is the right bias for optimization but disastrous when the enforced
    subset is the question: the solver then refutes the team count against
    every allocatable task before backing off, which is where clause
    learning degenerates.  Search order only; the answers are unchanged.
    """
    engine.sync()
    hinted = list(engine.formula.phase_hints)
    for v in hinted:
        engine.solver.set_phase(v, False)
    try:
        yield
    finally:
        for v in hinted:
            engine.solver.set_phase(v, engine.formula.phase_hints[v])


def find_mus(
    formula_or_engine,
    soft: list[ConstraintLabel] | None = None,
    fixed_assumptions=(),
    budget: float = DEFAULT_BUDGET,
) -> Mus:
    """Deletion-based MUS over the given soft labels.

    Labels are tested in creation order; a label is dropped when the rest
    stays unsatisfiable without it, and every UNSAT answer replaces the
    working set by the solver's assumption core.  On budget exhaustion the
    current (possibly non-minimal) set is returned with minimal=False.
    """
    engine = _as_engine(formula_or_engine)
    f = engine.formula
    t0 = time.monotonic()
    deadline = t0 + budget
    soft = _ordered(f, soft if soft is not None else f.soft_labels())
    fixed = list(fixed_assumptions)
    sel = {f.selector(l): l for l in soft}
    calls = 0

    def solve(labels):
        nonlocal calls
        calls += 1
        return solve_with_counting(
            engine, fixed + [f.selector(l) for l in labels], deadline - time.monotonic()
        )

    with _hints_biased_off(engine):
        res = solve(soft)
        if res.status == SAT:
            raise InputSatisfiableError(
                "soft constraints are satisfiable; no MUS exists"
            )
        if res.status == TIMEOUT:
            return Mus(
                soft, minimal=False, solver_calls=calls, wall_time=time.monotonic() - t0
            )
        working = [l for l in soft if f.selector(l) in set(res.core)]

        confirmed: list[ConstraintLabel] = []
        while working:
            candidate = working.pop(0)
            trial = confirmed + working
            if time.monotonic() >= deadline:
                return Mus(
                    _ordered(f, trial + [candidate]),
                    minimal=False,
                    solver_calls=calls,
                    wall_time=time.monotonic() - t0,
                )
            res = solve(trial)
            if res.status == TIMEOUT:
                return Mus(
                    _ordered(f, trial + [candidate]),
                    minimal=False,
                    solver_calls=calls,
                    wall_time=time.monotonic() - t0,
                )
            if res.status == UNSAT:
                core = {sel[s] for s in res.core if s in sel}
                confirmed = [l for l in confirmed if l in core]
                working = [l for l in working if l in core]
            else:
                confirmed.append(candidate)
        return Mus(
            _ordered(f, confirmed),
            minimal=True,
            solver_calls=calls,
            wall_time=time.monotonic() - t0,
        )


def find_mcs(
    formula_or_engine,
    soft: list[ConstraintLabel] | None = None,
    fixed_assumptions=(),
    budget: float = DEFAULT_BUDGET,
    seed_model: list[bool] | None = None,
) -> Mcs:
    """MCS via a linear grow of a maximal satisfiable subset.

    Each soft label is added to the kept set when still satisfiable with
    it; labels whose groups already hold in the latest model are harvested
    without extra solver calls.  When a seed model is supplied (typically
    from the size-maximal allocation), labels it satisfies are tried first
    so the correction set aligns with the visualized unset tasks.
    """
    engine = _as_engine(formula_or_engine)
    f = engine.formula
    t0 = time.monotonic()
    deadline = t0 + budget
    soft = _ordered(f, soft if soft is not None else f.soft_labels())
    fixed = list(fixed_assumptions)
    calls = 0

    res = solve_with_counting(engine, fixed, deadline - time.monotonic())
    calls += 1
    if res.status == UNSAT:
        raise HardCoreConflictError("always-on constraints are unsatisfiable")
    if res.status == TIMEOUT:
        return Mcs(soft, minimal=False, solver_calls=calls, wall_time=time.monotonic() - t0)

    if seed_model is not None:
        satisfied_first = sorted(
            soft, key=lambda l: (not f.group_satisfied(l, seed_model),)
        )
    else:
        satisfied_first = list(soft)

    kept: set[ConstraintLabel] = set()
    model = res.model
    for l in satisfied_first:
        if l in kept:
            continue
        if f.group_satisfied(l, model):
            kept.add(l)
            continue
        if time.monotonic() >= deadline:
            return Mcs(
                _ordered(f, [x for x in soft if x not in kept]),
                minimal=False,
                solver_calls=calls,
                wall_time=time.monotonic() - t0,
            )
        res = solve_with_counting(
            engine,
            fixed + [f.selector(x) for x in _ordered(f, kept | {l})],
            deadline - time.monotonic(),
        )
        calls += 1
        if res.status == TIMEOUT:
            return Mcs(
                _ordered(f, [x for x in soft if x not in kept]),
                minimal=False,
                solver_calls=calls,
                wall_time=time.monotonic() - t0,
            )
        if res.status == SAT:
            kept.add(l)
            model = res.model
            for other in soft:
                if other not in kept and f.group_satisfied(other, model):
                    kept.add(other)
    return Mcs(
        _ordered(f, [x for x in soft if x not in kept]),
        minimal=True,
        solver_calls=calls,
        wall_time=time.monotonic() - t0,
    )


def describe_conflict(
    labels, instance_formula: LabeledFormula, kind: str = "MUS"
) -> ConflictExplanation:
    """Render labels into per-constraint text and the ids they touch."""
    f = instance_formula
    instance = f.instance
    resolved = [f.label_by_id(l) if isinstance(l, str) else l for l in labels]
    for l in resolved:
        if l not in f.groups:
            raise KeyError(f"label {l.id} not part of this formula")
    acts: list[str] = []
    teams: list[str] = []

    def touch(ident: str) -> None:
        if instance.has_activity(ident) and ident not in acts:
            acts.append(ident)
        elif instance.has_team(ident) and ident not in teams:
            teams.append(ident)

    for l in resolved:
        for ident in l.subject:
            touch(ident)
        if l.kind == TASK_ALLOCATED:
            for tid in instance.compatible_teams(l.subject[0]):
                touch(tid)
    return ConflictExplanation(
        kind=kind,
        labels=_ordered(f, resolved),
        text={l.id: l.text for l in resolved},
        involved_activities=acts,
        involved_teams=teams,
    )
