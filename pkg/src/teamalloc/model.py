"""Problem instances and the combinatorial structure the encoding needs.

An instance is a set of activities with fixed integer time windows, a set
of worker teams, an (activity, team) compatibility matrix and a list of
activity pairs that must share a team.  All times are integer minutes from
the horizon origin, so comparisons are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Activity:
    """A pre-scheduled task with a half-open time window [start, end)."""

    id: str
    start: int
    end: int
    label: str | None = None


@dataclass(frozen=True)
class Team:
    """A worker team that activities can be allocated to."""

    id: str
    label: str | None = None


@dataclass
class Instance:
    """A workforce allocation problem.

    ``compat[i][j]`` is True when team ``teams[j]`` can perform activity
    ``activities[i]``.  ``same_pairs`` lists activity-id pairs that must be
    allocated to the same team.
    """

    activities: list[Activity]
    teams: list[Team]
    compat: list[list[bool]]
    same_pairs: list[tuple[str, str]] = field(default_factory=list)
    horizon_hours: int = 24

    def __post_init__(self):
        self._act_index = {a.id: i for i, a in enumerate(self.activities)}
        self._team_index = {t.id: j for j, t in enumerate(self.teams)}

    def activity_index(self, activity_id: str) -> int:
        try:
            return self._act_index[activity_id]
        except KeyError:
            raise KeyError(f"unknown activity {activity_id}") from None

    def team_index(self, team_id: str) -> int:
        try:
            return self._team_index[team_id]
        except KeyError:
            raise KeyError(f"unknown team {team_id}") from None

    def has_activity(self, activity_id: str) -> bool:
        return activity_id in self._act_index

    def has_team(self, team_id: str) -> bool:
        return team_id in self._team_index

    def is_compatible(self, activity_id: str, team_id: str) -> bool:
        return self.compat[self.activity_index(activity_id)][self.team_index(team_id)]

    def compatible_teams(self, activity_id: str) -> list[str]:
        i = self.activity_index(activity_id)
        return [t.id for j, t in enumerate(self.teams) if self.compat[i][j]]


@dataclass
class EquivalenceClasses:
    """Partition of team ids into groups with identical compatibility columns.

    Within each class, teams keep the instance's declaration order; this
    fixes the orientation of the lexicographic symmetry-breaking ordering.
    """

    classes: list[list[str]]

    def class_of(self, team_id: str) -> list[str]:
        for cls in self.classes:
            if team_id in cls:
                return cls
        raise KeyError(f"unknown team {team_id}")


@dataclass(frozen=True)
class Violation:
    subject: str
    message: str


def validate_instance(instance: Instance) -> list[Violation]:
    """Check every instance invariant; an empty report means valid."""
    report: list[Violation] = []
    seen_acts: set[str] = set()
    for a in instance.activities:
        if a.id in seen_acts:
            report.append(Violation(a.id, f"duplicate activity id {a.id}"))
        seen_acts.add(a.id)
        if not isinstance(a.start, int) or not isinstance(a.end, int):
            report.append(Violation(a.id, f"activity {a.id}: times must be integers"))
            continue
        if a.start < 0:
            report.append(Violation(a.id, f"activity {a.id}: start must be >= 0"))
        if not a.start < a.end:
            report.append(Violation(a.id, f"activity {a.id}: start < end required"))
    seen_teams: set[str] = set()
    for t in instance.teams:
        if t.id in seen_teams:
            report.append(Violation(t.id, f"duplicate team id {t.id}"))
        seen_teams.add(t.id)
    if len(instance.compat) != len(instance.activities) or any(
        len(row) != len(instance.teams) for row in instance.compat
    ):
        report.append(
            Violation(
                "compat",
                f"compat must be a {len(instance.activities)}x{len(instance.teams)} matrix",
            )
        )
    for a1, a2 in instance.same_pairs:
        for aid in (a1, a2):
            if aid not in seen_acts:
                report.append(Violation(aid, f"unknown activity {aid} in same_pairs"))
    return report


class InvalidInstanceError(ValueError):
    def __init__(self, report: list[Violation]):
        self.report = report
        super().__init__("; ".join(v.message for v in report))


def require_valid(instance: Instance) -> None:
    report = validate_instance(instance)
    if report:
        raise InvalidInstanceError(report)


def _overlaps(a: Activity, b: Activity, strict_touch: bool) -> bool:
    # b is a neighbour of a when end_b > start_a and end_a >= start_b.
    # With strict_touch the >= becomes >, dropping back-to-back pairs.
    if strict_touch:
        return b.end > a.start and a.end > b.start
    return b.end > a.start and a.end >= b.start


def neighbors(instance: Instance, activity_id: str, strict_touch: bool = False) -> set[str]:
    """Activities whose window conflicts with the given one (itself excluded).

    Note the predicate is asymmetric on touching windows (end_a == start_b)
    unless strict_touch is set; the encoding symmetrizes pairs.
    """
    i = instance.activity_index(activity_id)
    a = instance.activities[i]
    return {
        b.id
        for b in instance.activities
        if b.id != a.id and _overlaps(a, b, strict_touch)
    }


def overlapping_pairs(instance: Instance, strict_touch: bool = False) -> list[tuple[str, str]]:
    """Symmetrized conflict pairs, ordered by activity declaration index.

    A pair is constrained when either activity is a neighbour of the other,
    so the result is independent of declaration order.
    """
    acts = instance.activities
    pairs = []
    for i in range(len(acts)):
        for j in range(i + 1, len(acts)):
            if _overlaps(acts[i], acts[j], strict_touch) or _overlaps(
                acts[j], acts[i], strict_touch
            ):
                pairs.append((acts[i].id, acts[j].id))
    return pairs


def start_cliques(instance: Instance) -> list[tuple[str, frozenset[str]]]:
    """Per activity, the set of activities running at its start time.

    Membership uses start_b <= start_a < end_b, so each anchor's set includes
    the anchor itself and forms a clique of pairwise-overlapping activities.
    """
    out = []
    for a in instance.activities:
        members = frozenset(
            b.id for b in instance.activities if b.start <= a.start < b.end
        )
        out.append((a.id, members))
    return out


def deduplicated_cliques(instance: Instance) -> list[frozenset[str]]:
    """Start cliques with duplicate and subset-redundant sets removed."""
    seen: set[frozenset[str]] = set()
    uniques: list[frozenset[str]] = []
    for _, members in start_cliques(instance):
        if members not in seen:
            seen.add(members)
            uniques.append(members)
    # drop sets strictly contained in another: their constraint is implied
    return [
        s
        for s in uniques
        if not any(s < other for other in uniques)
    ]


def largest_conflict_clique(
    instance: Instance,
    activity_ids: set[str] | None = None,
    strict_touch: bool = False,
) -> list[str]:
    """Members of the largest set of pairwise time-conflicting activities.

    Pairwise-intersecting 1-D intervals always share a common point, and
    that point can be taken at the latest start among them, so scanning
    start points is exact.  Without strict_touch the symmetrized conflict
    predicate equals intersection of the closed windows [start, end], so
    back-to-back activities count as conflicting.  Deterministic: the
    earliest maximizing start point wins, members come in declaration
    order.
    """
    acts = instance.activities
    if activity_ids is not None:
        acts = [a for a in acts if a.id in activity_ids]
    best: list[str] = []
    for a in acts:
        p = a.start
        if strict_touch:
            members = [b.id for b in acts if b.start <= p < b.end]
        else:
            members = [b.id for b in acts if b.start <= p <= b.end]
        if len(members) > len(best):
            best = members
    return best


def max_conflict_clique(
    instance: Instance,
    activity_ids: set[str] | None = None,
    strict_touch: bool = False,
) -> int:
    """Size of the largest set of pairwise time-conflicting activities."""
    return len(largest_conflict_clique(instance, activity_ids, strict_touch))


def team_equivalence_classes(instance: Instance) -> EquivalenceClasses:
    """Group teams by identical compatibility columns, in declaration order."""
    by_column: dict[tuple[bool, ...], list[str]] = {}
    order: list[tuple[bool, ...]] = []
    for j, t in enumerate(instance.teams):
        column = tuple(row[j] for row in instance.compat)
        if column not in by_column:
            by_column[column] = []
            order.append(column)
        by_column[column].append(t.id)
    return EquivalenceClasses([by_column[c] for c in order])
