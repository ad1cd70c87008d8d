"""Independent checkers: never trust the solver's own answers.

``check_model`` evaluates every clause and native cardinality entry of a
formula directly against a model.  ``check_gantt`` re-validates a Gantt
view against the instance's time windows without looking at the solver or
the encoding.
"""

from __future__ import annotations

from . import model as m
from .encode import LabeledFormula


class ModelError(AssertionError):
    pass


def clause_satisfied(clause: list[int], model: list[bool]) -> bool:
    return any(model[l] if l > 0 else not model[-l] for l in clause)


def check_model(formula: LabeledFormula, model: list[bool], active_selectors=()) -> None:
    """Raise ModelError unless the model satisfies the whole formula.

    ``active_selectors`` are assumption literals that must additionally
    hold (the solver treats assumptions as unit constraints).
    """
    if len(model) < formula.var_count + 1:
        raise ModelError(
            f"model covers {len(model) - 1} vars, formula has {formula.var_count}"
        )
    for lit in active_selectors:
        if not (model[lit] if lit > 0 else not model[-lit]):
            raise ModelError(f"assumption {lit} does not hold in model")
    for i, clause in enumerate(formula.clauses):
        if not clause_satisfied(clause, model):
            raise ModelError(f"clause {i} {clause} falsified")
    for lits, bound, sense in formula.cardinality:
        count = sum(1 for l in lits if (model[l] if l > 0 else not model[-l]))
        if sense == "at_most" and count > bound:
            raise ModelError(f"at-most-{bound} over {lits} violated: {count}")
        if sense == "at_least" and count < bound:
            raise ModelError(f"at-least-{bound} over {lits} violated: {count}")


def check_allocation(
    instance: m.Instance,
    allocation: dict[str, str],
    require_total: bool = True,
    strict_touch: bool = False,
) -> list[str]:
    """Check an allocation against the instance constraints directly.

    Returns a list of violation messages (empty = valid).  With
    require_total=False a partial allocation is accepted and only the
    allocated activities are checked.
    """
    problems: list[str] = []
    if require_total:
        for a in instance.activities:
            if a.id not in allocation:
                problems.append(f"activity {a.id} unallocated")
    for aid, tid in allocation.items():
        if not instance.has_activity(aid):
            problems.append(f"unknown activity {aid}")
            continue
        if not instance.has_team(tid):
            problems.append(f"unknown team {tid}")
            continue
        if not instance.is_compatible(aid, tid):
            problems.append(f"{aid} allocated to incompatible team {tid}")
    for a1, a2 in m.overlapping_pairs(instance, strict_touch):
        if a1 in allocation and a2 in allocation and allocation[a1] == allocation[a2]:
            problems.append(f"conflicting tasks {a1}, {a2} share team {allocation[a1]}")
    for a1, a2 in instance.same_pairs:
        t1, t2 = allocation.get(a1), allocation.get(a2)
        if require_total or (t1 is not None and t2 is not None):
            if t1 != t2:
                problems.append(f"same-pair ({a1}, {a2}) split across {t1}, {t2}")
    return problems


UNSET = "Unset"


def check_gantt(instance: m.Instance, rows, strict_touch: bool = False) -> list[str]:
    """Standalone non-overlap and coverage checker for a Gantt view.

    ``rows`` is an ordered list of (row_id, [(activity_id, start, end), ...]).
    Within every real team row no two entries may conflict in time, and
    every instance activity must appear in exactly one row.
    """
    problems: list[str] = []
    seen: dict[str, int] = {}
    act_by_id = {a.id: a for a in instance.activities}
    for row_id, entries in rows:
        if row_id != UNSET and not instance.has_team(row_id):
            problems.append(f"unknown row {row_id}")
        for aid, start, end in entries:
            seen[aid] = seen.get(aid, 0) + 1
            a = act_by_id.get(aid)
            if a is None:
                problems.append(f"unknown activity {aid} in row {row_id}")
            elif (a.start, a.end) != (start, end):
                problems.append(f"{aid} drawn at [{start},{end}), window is [{a.start},{a.end})")
        if row_id == UNSET:
            continue
        for i in range(len(entries)):
            for j in range(i + 1, len(entries)):
                x = act_by_id.get(entries[i][0])
                y = act_by_id.get(entries[j][0])
                if x is None or y is None:
                    continue
                if m._overlaps(x, y, strict_touch) or m._overlaps(y, x, strict_touch):
                    problems.append(
                        f"row {row_id}: {x.id} and {y.id} conflict in time"
                    )
    for a in instance.activities:
        n = seen.get(a.id, 0)
        if n != 1:
            problems.append(f"activity {a.id} appears {n} times in the chart")
    return problems
