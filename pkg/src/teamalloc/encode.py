"""Translate an instance into a labeled clausal formula.

Every constraint instance gets a label; labels whose kind is configured as
soft are guarded by a fresh selector literal.  Assuming the selector
enforces the group, omitting it relaxes the whole group.  Hard groups are
asserted directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import model as m
from .cardinality import at_most_k

# Constraint kinds
TASK_ALLOCATED = "TaskAllocated"
OVERLAP = "Overlap"
COMPATIBILITY = "Compatibility"
SAME_PAIR = "SamePair"
USED_LINK = "UsedLink"
CLIQUE = "Clique"
SYMMETRY = "Symmetry"
OVERRIDE = "Override"
BOUND = "Bound"

RELAXABLE_KINDS = frozenset({TASK_ALLOCATED, OVERLAP, COMPATIBILITY, SAME_PAIR})


@dataclass(frozen=True)
class ConstraintLabel:
    kind: str
    subject: tuple[str, ...]
    text: str = field(compare=False, default="")

    @property
    def id(self) -> str:
        return f"{self.kind}:{'+'.join(self.subject)}"

    def __str__(self) -> str:
        return self.id


@dataclass(frozen=True)
class EncodeConfig:
    clique: bool = True
    symmetry: bool = True
    soft_kinds: frozenset[str] = frozenset({TASK_ALLOCATED})
    strict_touch: bool = False

    def __post_init__(self):
        bad = set(self.soft_kinds) - RELAXABLE_KINDS
        if bad:
            raise ValueError(f"kinds can never be soft: {sorted(bad)}")


class UnknownLabelError(KeyError):
    pass


class LabeledFormula:
    """Clauses plus a label -> selector map over an allocation instance."""

    def __init__(self, instance: m.Instance, cfg: EncodeConfig):
        self.instance = instance
        self.cfg = cfg
        self.var_count = 0
        self.clauses: list[list[int]] = []
        self.cardinality: list[tuple[list[int], int, str]] = []
        self.groups: dict[ConstraintLabel, int | None] = {}  # selector var or None = hard
        self.group_clauses: dict[str, list[list[int]]] = {}
        self.alloc_var: dict[tuple[str, str], int] = {}
        self.used_var: dict[str, int] = {}
        self.phase_hints: dict[int, bool] = {}
        self._by_id: dict[str, ConstraintLabel] = {}

    # ---- construction ------------------------------------------------

    def new_var(self, phase: bool | None = None) -> int:
        self.var_count += 1
        if phase is not None:
            self.phase_hints[self.var_count] = phase
        return self.var_count

    def add_clause(self, lits: list[int], label: ConstraintLabel | None = None) -> None:
        lits = list(lits)
        self.clauses.append(lits)
        if label is not None:
            self.group_clauses[label.id].append(lits)

    def add_group(self, label: ConstraintLabel, soft: bool) -> int | None:
        """Register a label; returns its selector var (None when hard)."""
        if label.id in self._by_id:
            raise ValueError(f"duplicate label {label.id}")
        selector = self.new_var(phase=True) if soft else None
        self.groups[label] = selector
        self.group_clauses[label.id] = []
        self._by_id[label.id] = label
        return selector

    # ---- lookup --------------------------------------------------------

    def label_by_id(self, label_id: str) -> ConstraintLabel:
        try:
            return self._by_id[label_id]
        except KeyError:
            raise UnknownLabelError(label_id) from None

    def selector(self, label: ConstraintLabel | str) -> int:
        if isinstance(label, str):
            label = self.label_by_id(label)
        if label not in self.groups:
            raise UnknownLabelError(label.id)
        s = self.groups[label]
        if s is None:
            raise UnknownLabelError(f"{label.id} is hard, has no selector")
        return s

    def is_soft(self, label: ConstraintLabel) -> bool:
        return self.groups.get(label) is not None

    def soft_labels(self) -> list[ConstraintLabel]:
        return [l for l, s in self.groups.items() if s is not None]

    def labels_of_kind(self, kind: str) -> list[ConstraintLabel]:
        return [l for l in self.groups if l.kind == kind]

    def assumptions_all(self) -> list[int]:
        """Selector literals activating every soft group."""
        return [s for s in self.groups.values() if s is not None]

    def group_satisfied(self, label: ConstraintLabel, model: list[bool]) -> bool:
        """Would the group hold if its selector were asserted in this model?"""
        s = self.groups.get(label)
        for clause in self.group_clauses[label.id]:
            ok = False
            for lit in clause:
                if s is not None and abs(lit) == s:
                    if lit > 0:
                        ok = True
                        break
                    continue  # treat the guard -s as false
                if model[lit] if lit > 0 else not model[-lit]:
                    ok = True
                    break
            if not ok:
                return False
        return True

    # ---- debug export ---------------------------------------------------

    def to_dimacs(self) -> str:
        """Extended DIMACS dump with one comment line per labeled group."""
        lines = [f"p cnf {self.var_count} {len(self.clauses)}"]
        for label, sel in self.groups.items():
            tag = "hard" if sel is None else f"selector {sel}"
            lines.append(f"c group {label.id} ({tag})")
        for cl in self.clauses:
            lines.append(" ".join(map(str, cl)) + " 0")
        return "\n".join(lines) + "\n"


def relax(formula: LabeledFormula, labels) -> list[int]:
    """Assumptions activating every soft group except the given ones."""
    dropped = set()
    for label in labels:
        if isinstance(label, str):
            label = formula.label_by_id(label)
        formula.selector(label)  # raises if unknown or hard
        dropped.add(label)
    return [
        s for l, s in formula.groups.items() if s is not None and l not in dropped
    ]


def _fmt_time(minutes: int) -> str:
    return f"{minutes // 60:02d}:{minutes % 60:02d}"


def _window(a: m.Activity) -> str:
    return f"[{_fmt_time(a.start)}-{_fmt_time(a.end)}]"


def encode(instance: m.Instance, cfg: EncodeConfig | None = None) -> LabeledFormula:
    """Build the labeled formula for a valid instance.

    Variable layout: allocation variables in (activity, team) declaration
    order, then per-team used flags, then selectors and auxiliaries in
    creation order.  The construction is pure and deterministic.
    """
    cfg = cfg or EncodeConfig()
    m.require_valid(instance)
    f = LabeledFormula(instance, cfg)
    acts = instance.activities
    teams = instance.teams

    for a in acts:
        for t in teams:
            f.alloc_var[(a.id, t.id)] = f.new_var(phase=True)
    for t in teams:
        f.used_var[t.id] = f.new_var()

    soft = cfg.soft_kinds
    act_by_id = {a.id: a for a in acts}

    # (1) each task allocated to exactly one team
    for a in acts:
        avars = [f.alloc_var[(a.id, t.id)] for t in teams]
        compatible = instance.compatible_teams(a.id)
        label = ConstraintLabel(
            TASK_ALLOCATED,
            (a.id,),
            f"Task {a.id} {_window(a)} must be assigned to one of "
            f"{{{', '.join(compatible) or 'no compatible team'}}}",
        )
        sel = f.add_group(label, TASK_ALLOCATED in soft)
        if sel is None:
            f.add_clause(avars, label)
            for i in range(len(avars)):
                for j in range(i + 1, len(avars)):
                    f.add_clause([-avars[i], -avars[j]], label)
        else:
            f.add_clause([-sel] + avars, label)
            for i in range(len(avars)):
                for j in range(i + 1, len(avars)):
                    f.add_clause([-sel, -avars[i], -avars[j]], label)
            # selector doubles as an "is allocated" indicator
            for v in avars:
                f.add_clause([-v, sel], label)

    # (2) overlapping activities on different teams (symmetrized pairs)
    for a1, a2 in m.overlapping_pairs(instance, cfg.strict_touch):
        x, y = act_by_id[a1], act_by_id[a2]
        lo, hi = max(x.start, y.start), min(x.end, y.end)
        shared = f"{_fmt_time(lo)}-{_fmt_time(hi)}" if lo < hi else "back-to-back"
        label = ConstraintLabel(
            OVERLAP,
            (a1, a2),
            f"Tasks {a1} and {a2} overlap ({shared}) and need different teams",
        )
        sel = f.add_group(label, OVERLAP in soft)
        guard = [] if sel is None else [-sel]
        for t in teams:
            f.add_clause(
                guard + [-f.alloc_var[(a1, t.id)], -f.alloc_var[(a2, t.id)]], label
            )

    # (3) compatibility
    for i, a in enumerate(acts):
        for j, t in enumerate(teams):
            if not instance.compat[i][j]:
                label = ConstraintLabel(
                    COMPATIBILITY,
                    (a.id, t.id),
                    f"Team {t.id} cannot perform task {a.id}",
                )
                sel = f.add_group(label, COMPATIBILITY in soft)
                guard = [] if sel is None else [-sel]
                f.add_clause(guard + [-f.alloc_var[(a.id, t.id)]], label)

    # (4) same-allocation pairs
    for a1, a2 in instance.same_pairs:
        label = ConstraintLabel(
            SAME_PAIR,
            (a1, a2),
            f"Tasks {a1} and {a2} must be done by the same team",
        )
        sel = f.add_group(label, SAME_PAIR in soft)
        guard = [] if sel is None else [-sel]
        for t in teams:
            v1, v2 = f.alloc_var[(a1, t.id)], f.alloc_var[(a2, t.id)]
            f.add_clause(guard + [-v1, v2], label)
            f.add_clause(guard + [v1, -v2], label)

    # (5) allocation marks the team used (always hard)
    for a in acts:
        for t in teams:
            label = ConstraintLabel(
                USED_LINK,
                (a.id, t.id),
                f"Allocating {a.id} to {t.id} marks {t.id} as used",
            )
            f.add_group(label, False)
            f.add_clause([-f.alloc_var[(a.id, t.id)], f.used_var[t.id]], label)

    # (6a) redundant per-clique at-most-one: with the pairwise encoding every
    # clique pair is already covered by an overlap clause from (2), so the
    # toggle contributes no additional clauses
    if cfg.clique:
        covered: set[frozenset[str]] = set()
        overlap_pairs = {frozenset(p) for p in m.overlapping_pairs(instance, cfg.strict_touch)}
        for clique in m.deduplicated_cliques(instance):
            members = sorted(clique, key=lambda aid: instance.activity_index(aid))
            for i in range(len(members)):
                for j in range(i + 1, len(members)):
                    pair = frozenset((members[i], members[j]))
                    if pair in overlap_pairs or pair in covered:
                        continue
                    covered.add(pair)
                    for t in teams:
                        f.add_clause(
                            [
                                -f.alloc_var[(members[i], t.id)],
                                -f.alloc_var[(members[j], t.id)],
                            ]
                        )

    # (6b) lexleader ordering on used flags within team equivalence classes
    if cfg.symmetry:
        for k, cls in enumerate(m.team_equivalence_classes(instance).classes):
            if len(cls) < 2:
                continue
            label = ConstraintLabel(
                SYMMETRY,
                tuple(cls),
                f"Teams {', '.join(cls)} are interchangeable; "
                "used flags follow declaration order",
            )
            f.add_group(label, False)
            for t1, t2 in zip(cls, cls[1:]):
                f.add_clause([f.used_var[t1], -f.used_var[t2]], label)

    return f


def add_override(
    formula: LabeledFormula, activity_id: str, team_id: str, mode: str
) -> ConstraintLabel:
    """Append a user override as a selector-guarded unit constraint.

    Overrides are asserted like hard constraints while the problem stays
    feasible, but carry selectors so restoration can offer to relax them.
    """
    if mode not in ("force", "forbid"):
        raise ValueError(f"override mode must be force or forbid, got {mode}")
    verb = "must be done by" if mode == "force" else "must not be done by"
    label = ConstraintLabel(
        OVERRIDE,
        (activity_id, team_id, mode),
        f"User override: task {activity_id} {verb} team {team_id}",
    )
    sel = formula.add_group(label, True)
    v = formula.alloc_var[(activity_id, team_id)]
    formula.add_clause([-sel, v if mode == "force" else -v], label)
    return label


def encode_at_most_k(lits: list[int], k: int, next_var: int) -> tuple[list[list[int]], int]:
    """Standalone at-most-k clause encoding (sequential counter)."""
    return at_most_k(lits, k, next_var)
