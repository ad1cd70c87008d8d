"""The interactive feasibility-restoration state machine.

A session owns an instance, its encoding and one incremental solver
handle.  It tracks which soft constraints the user relaxed, any manual
allocation overrides and per-task priorities, and exposes the three
restoration workflows: local (MUS by MUS), global (MCS, possibly accepted
piecewise) and priority tuning.  Every mutating call is appended to an
event log; replaying the log on a fresh session reproduces the state.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from . import model as m
from .encode import (
    OVERRIDE,
    TASK_ALLOCATED,
    ConstraintLabel,
    EncodeConfig,
    LabeledFormula,
    add_override,
    encode,
)
from .explain import ConflictExplanation, Mcs, Mus, describe_conflict, find_mcs, find_mus
from .optimize import (
    DEFAULT_BUDGET,
    FormulaSolver,
    Infeasible,
    OptimalSolution,
    PriorityWeights,
    RelaxedSolution,
    Timeout,
    max_allocated_tasks,
    maximize_weighted_allocation,
    minimize_used_teams,
    solve_with_counting,
)
from .verify import UNSET, check_gantt

IDLE = "Idle"
FEASIBLE = "Feasible"
INFEASIBLE = "Infeasible"
LOCAL_RESOLUTION = "LocalResolution"
GLOBAL_RESOLUTION = "GlobalResolution"
PRIORITY_TUNING = "PriorityTuning"


class WrongModeError(RuntimeError):
    def __init__(self, expected, actual):
        super().__init__(f"operation requires mode {expected}, session is {actual}")
        self.expected = expected
        self.actual = actual


class OverrideError(ValueError):
    pass


class NoSolutionError(RuntimeError):
    pass


@dataclass
class GanttData:
    rows: list[tuple[str, list[tuple[str, int, int]]]]
    conflict_highlight: set[str] = field(default_factory=set)


class Session:
    """Single-writer interactive session over one allocation problem."""

    def __init__(
        self,
        instance: m.Instance,
        cfg: EncodeConfig | None = None,
        budget: float = DEFAULT_BUDGET,
        _replay: bool = False,
    ):
        self.instance = instance
        self.cfg = cfg or EncodeConfig()
        self.budget = budget
        self.formula: LabeledFormula = encode(instance, self.cfg)
        self.engine = FormulaSolver(self.formula)
        self.relaxed: list[ConstraintLabel] = []
        self.overrides: list[tuple[str, str, str]] = []
        self.priorities = PriorityWeights()
        self.mode = IDLE
        self.last_solution: OptimalSolution | RelaxedSolution | None = None
        self.last_conflict: Mus | Mcs | None = None
        self.history: list[dict[str, Any]] = []
        if not _replay:
            self._log("start", {})
            self._resolve_feasibility()

    # ---- internals ----------------------------------------------------

    def _log(self, op: str, args: dict[str, Any]) -> None:
        self.history.append({"op": op, "args": args})

    def _assumptions(self) -> list[int]:
        relaxed = set(self.relaxed)
        return [
            s
            for l, s in self.formula.groups.items()
            if s is not None and l not in relaxed
        ]

    def _soft_candidates(self) -> list[ConstraintLabel]:
        relaxed = set(self.relaxed)
        return [l for l in self.formula.soft_labels() if l not in relaxed]

    def _resolve_feasibility(self) -> None:
        result = minimize_used_teams(self.engine, self.budget, self._assumptions())
        if isinstance(result, Infeasible):
            self.mode = INFEASIBLE
            self.last_solution = None
        elif isinstance(result, Timeout):
            self.mode = FEASIBLE if result.best is not None else INFEASIBLE
            self.last_solution = result.best
        else:
            self.mode = FEASIBLE
            self.last_solution = result
        self.last_conflict = None

    def _require_mode(self, *modes: str) -> None:
        if self.mode not in modes:
            raise WrongModeError("/".join(modes), self.mode)

    # ---- operations -----------------------------------------------------

    def resolve(self) -> None:
        """Re-run the used-teams optimization on the current problem."""
        self._log("resolve", {})
        self._resolve_feasibility()

    def apply_override(self, activity_id: str, team_id: str, mode: str) -> None:
        """Pin (force) or ban (forbid) one activity-team assignment and re-solve."""
        if not self.instance.has_activity(activity_id):
            raise OverrideError(f"unknown activity {activity_id}")
        if not self.instance.has_team(team_id):
            raise OverrideError(f"unknown team {team_id}")
        if mode == "force" and not self.instance.is_compatible(activity_id, team_id):
            raise OverrideError(
                f"cannot force {activity_id} onto {team_id}: the team is not "
                "compatible with this task"
            )
        add_override(self.formula, activity_id, team_id, mode)
        self.overrides.append((activity_id, team_id, mode))
        self._log("override", {"activity": activity_id, "team": team_id, "mode": mode})
        self._resolve_feasibility()

    def begin_local_resolution(self) -> tuple[Mus, ConflictExplanation]:
        """Enter MUS-by-MUS restoration; presents the first conflict."""
        self._require_mode(INFEASIBLE)
        self._log("local_begin", {})
        mus = find_mus(self.engine, self._soft_candidates(), budget=self.budget)
        self.mode = LOCAL_RESOLUTION
        self.last_conflict = mus
        return mus, describe_conflict(mus.labels, self.formula, "MUS")

    def resolve_local(self, label) -> tuple[Mus | None, ConflictExplanation | None]:
        """Relax one constraint of the current MUS; returns the next MUS if any."""
        self._require_mode(LOCAL_RESOLUTION)
        label = self._resolve_label(label)
        assert isinstance(self.last_conflict, Mus)
        if label not in self.last_conflict.labels:
            raise KeyError(f"{label.id} is not part of the current conflict")
        if label in self.relaxed:
            raise KeyError(f"{label.id} is already relaxed")
        self.relaxed.append(label)
        self._log("local_resolve", {"label": label.id})
        res = solve_with_counting(self.engine, self._assumptions(), self.budget)
        if res.status == "SAT":
            self._resolve_feasibility()
            return None, None
        mus = find_mus(self.engine, self._soft_candidates(), budget=self.budget)
        self.last_conflict = mus
        return mus, describe_conflict(mus.labels, self.formula, "MUS")

    def begin_global_resolution(self) -> tuple[Mcs, ConflictExplanation]:
        """Enter MCS restoration; proposes one full correction set."""
        self._require_mode(INFEASIBLE)
        self._log("global_begin", {})
        mcs = self._compute_mcs()
        self.mode = GLOBAL_RESOLUTION
        self.last_conflict = mcs
        return mcs, describe_conflict(mcs.labels, self.formula, "MCS")

    def _compute_mcs(self) -> Mcs:
        seed = max_allocated_tasks(
            self.engine, self.budget, assumptions=self._non_allocation_assumptions()
        )
        # recover the model backing the seed allocation for MCS ordering
        return find_mcs(
            self.engine,
            self._soft_candidates(),
            budget=self.budget,
            seed_model=self._model_from_relaxed(seed),
        )

    def _non_allocation_assumptions(self) -> list[int]:
        relaxed = set(self.relaxed)
        return [
            s
            for l, s in self.formula.groups.items()
            if s is not None and l not in relaxed and l.kind != TASK_ALLOCATED
        ]

    def _model_from_relaxed(self, seed: RelaxedSolution) -> list[bool] | None:
        res = self.engine.solve(
            self._non_allocation_assumptions()
            + [
                self.formula.selector(l)
                for l in self.formula.labels_of_kind(TASK_ALLOCATED)
                if l.subject[0] in seed.allocation
            ],
            self.budget,
        )
        return res.model if res.status == "SAT" else None

    def accept_corrections(self, labels) -> tuple[Mcs | None, ConflictExplanation | None]:
        """Relax a subset of the proposed MCS; recompute when partial."""
        self._require_mode(GLOBAL_RESOLUTION)
        assert isinstance(self.last_conflict, Mcs)
        chosen = [self._resolve_label(l) for l in labels]
        current = set(self.last_conflict.labels)
        for l in chosen:
            if l not in current:
                raise KeyError(f"{l.id} is not part of the proposed correction set")
        self._log("global_accept", {"labels": [l.id for l in chosen]})
        if not chosen:
            return self.last_conflict, describe_conflict(
                self.last_conflict.labels, self.formula, "MCS"
            )
        for l in chosen:
            if l not in self.relaxed:
                self.relaxed.append(l)
        if set(chosen) == current:
            self._resolve_feasibility()
            return None, None
        mcs = self._compute_mcs()
        self.last_conflict = mcs
        return mcs, describe_conflict(mcs.labels, self.formula, "MCS")

    def tune_priorities(self, weight_updates: dict[str, int]) -> RelaxedSolution:
        """Adjust task priorities and propose a weight-maximal relaxed solution."""
        self._require_mode(INFEASIBLE, PRIORITY_TUNING)
        merged = dict(self.priorities.weights)
        merged.update(weight_updates)
        self.priorities = PriorityWeights(merged)  # validates positivity
        self._log("priorities", {"weights": dict(weight_updates)})
        solution = maximize_weighted_allocation(
            self.engine,
            self.priorities,
            self.budget,
            assumptions=self._non_allocation_assumptions(),
        )
        self.mode = PRIORITY_TUNING
        self.last_solution = solution
        return solution

    def gantt_view(self) -> GanttData:
        """Rows per team plus the virtual Unset row for unallocated tasks."""
        solution = self.last_solution
        if solution is None:
            if self.mode not in (INFEASIBLE, LOCAL_RESOLUTION, GLOBAL_RESOLUTION):
                raise NoSolutionError("no solution available yet")
            try:
                solution = max_allocated_tasks(
                    self.engine, self.budget, assumptions=self._non_allocation_assumptions()
                )
            except ValueError as exc:  # allocation groups are hard in this config
                raise NoSolutionError(str(exc)) from exc
        allocation = solution.allocation
        rows: list[tuple[str, list[tuple[str, int, int]]]] = []
        unset = [
            (a.id, a.start, a.end)
            for a in self.instance.activities
            if a.id not in allocation
        ]
        rows.append((UNSET, sorted(unset, key=lambda e: (e[1], e[0]))))
        for t in self.instance.teams:
            entries = [
                (a.id, a.start, a.end)
                for a in self.instance.activities
                if allocation.get(a.id) == t.id
            ]
            rows.append((t.id, sorted(entries, key=lambda e: (e[1], e[0]))))
        highlight: set[str] = set()
        if self.last_conflict is not None:
            expl = describe_conflict(self.last_conflict.labels, self.formula, "conflict")
            highlight = set(expl.involved_activities)
        gantt = GanttData(rows=rows, conflict_highlight=highlight)
        problems = check_gantt(self.instance, gantt.rows, self.cfg.strict_touch)
        if problems:
            raise AssertionError(f"gantt checker found violations: {problems}")
        return gantt

    # ---- serialization ----------------------------------------------------

    def _resolve_label(self, label) -> ConstraintLabel:
        return self.formula.label_by_id(label) if isinstance(label, str) else label

    def snapshot(self) -> dict[str, Any]:
        """JSON-ready view of the session state (timing stats excluded)."""
        sol: dict[str, Any] | None = None
        if isinstance(self.last_solution, OptimalSolution):
            sol = {
                "kind": "optimal",
                "allocation": dict(sorted(self.last_solution.allocation.items())),
                "used_teams": sorted(self.last_solution.used_teams),
                "objective": self.last_solution.objective,
                "proven_optimal": self.last_solution.proven_optimal,
            }
        elif isinstance(self.last_solution, RelaxedSolution):
            sol = {
                "kind": "relaxed",
                "allocation": dict(sorted(self.last_solution.allocation.items())),
                "unallocated": list(self.last_solution.unallocated),
                "satisfied_weight": self.last_solution.satisfied_weight,
                "proven_optimal": self.last_solution.proven_optimal,
            }
        conflict: dict[str, Any] | None = None
        if self.last_conflict is not None:
            conflict = {
                "kind": "MUS" if isinstance(self.last_conflict, Mus) else "MCS",
                "labels": [l.id for l in self.last_conflict.labels],
                "text": {l.id: l.text for l in self.last_conflict.labels},
                "minimal": self.last_conflict.minimal,
            }
        return {
            "mode": self.mode,
            "relaxed_labels": [l.id for l in self.relaxed],
            "overrides": [list(o) for o in self.overrides],
            "priorities": dict(sorted(self.priorities.weights.items())),
            "solution": sol,
            "conflict": conflict,
            "history": [dict(e) for e in self.history],
        }

    @classmethod
    def replay(
        cls,
        instance: m.Instance,
        cfg: EncodeConfig | None,
        history: list[dict[str, Any]],
        budget: float = DEFAULT_BUDGET,
    ) -> "Session":
        """Rebuild a session by re-applying its event log."""
        session = cls(instance, cfg, budget, _replay=True)
        for event in history:
            op, args = event["op"], event["args"]
            if op == "start":
                session._log("start", {})
                session._resolve_feasibility()
            elif op == "resolve":
                session.resolve()
            elif op == "override":
                session.apply_override(args["activity"], args["team"], args["mode"])
            elif op == "local_begin":
                session.begin_local_resolution()
            elif op == "local_resolve":
                session.resolve_local(args["label"])
            elif op == "global_begin":
                session.begin_global_resolution()
            elif op == "global_accept":
                session.accept_corrections(args["labels"])
            elif op == "priorities":
                session.tune_priorities(args["weights"])
            else:
                raise ValueError(f"unknown history event {op}")
        return session


def start_session(
    instance: m.Instance,
    cfg: EncodeConfig | None = None,
    budget: float = DEFAULT_BUDGET,
) -> Session:
    return Session(instance, cfg, budget)
