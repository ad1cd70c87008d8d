"""Synthetic instance generation, brute-force oracles and benchmark harnesses.

The generator produces parameterized random instances whose shape mirrors
the operational setting: a day-fraction horizon, about twenty teams, and
activity windows of 15 to 180 minutes.  All randomness flows through one
seeded ``random.Random``, so equal configurations yield identical
instances.  The brute-force oracles enumerate allocations directly against
the constraint definitions and never touch the SAT stack, which makes them
valid independent ground truth for the solver.
"""

from __future__ import annotations

import csv
import io
import random
import time
from dataclasses import dataclass, field

from . import model as m
from .encode import EncodeConfig, encode
from .explain import find_mus
from .optimize import (
    FormulaSolver,
    Infeasible,
    OptimalSolution,
    PriorityWeights,
    Timeout,
    minimize_used_teams,
)

MIN_DURATION = 15
MAX_DURATION = 180

INJECTION_NONE = "none"
INJECTION_OVERLOAD = "overload"


@dataclass(frozen=True)
class GenConfig:
    """Knobs for one random instance."""

    horizon_hours: int
    n_activities: int
    n_teams: int = 20
    compat_density: float = 1.0
    same_pair_count: int = 0
    injection: str = INJECTION_NONE
    overload: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.horizon_hours < 1:
            raise ValueError("horizon_hours must be positive")
        if self.n_activities < 0:
            raise ValueError("n_activities must be non-negative")
        if self.n_teams < 1:
            raise ValueError("n_teams must be positive")
        if not 0 < self.compat_density <= 1:
            raise ValueError("compat_density must be in (0, 1]")
        if self.same_pair_count < 0:
            raise ValueError("same_pair_count must be non-negative")
        if self.injection not in (INJECTION_NONE, INJECTION_OVERLOAD):
            raise ValueError(f"unknown injection {self.injection}")
        if self.injection == INJECTION_OVERLOAD and self.overload < 1:
            raise ValueError("overload must be at least 1")
        if self.horizon_hours * 60 < MAX_DURATION:
            raise ValueError("horizon too short for the duration distribution")


def _max_clique_with(start: int, end: int, accepted: list[tuple[int, int]]) -> int:
    """Largest set of pairwise-conflicting windows including [start, end).

    Uses the encoding's default conflict predicate, under which windows
    conflict exactly when their closures [start, end] intersect; the
    maximum clique through a window is then attained at one of the start
    points, so scanning candidate start points is exact.
    """
    points = {start}
    points.update(s for s, e in accepted if start <= s <= end)
    best = 1
    for p in points:
        count = 1 + sum(1 for s, e in accepted if s <= p <= e)
        best = max(best, count)
    return best


def generate_instance(cfg: GenConfig) -> m.Instance:
    """Build a random instance per the configuration.

    With injection "none" the concurrency at every time point is capped at
    the team count, so a fully-dense instance is feasible by construction.
    With injection "overload" a time point is planted where overload-many
    more mutually overlapping, all-compatible activities exist than teams,
    which makes the instance infeasible by a counting argument.
    """
    rng = random.Random(cfg.seed)
    horizon = cfg.horizon_hours * 60
    teams = [m.Team(id=f"t{j + 1}") for j in range(cfg.n_teams)]

    windows: list[tuple[int, int]] = []
    planted = 0
    if cfg.injection == INJECTION_OVERLOAD:
        planted = cfg.n_teams + cfg.overload
        anchor = horizon // 2
        for _ in range(planted):
            duration = rng.randint(MIN_DURATION, MAX_DURATION)
            lo = max(0, anchor - duration + 1)
            hi = min(anchor, horizon - duration)
            start = rng.randint(lo, hi)
            windows.append((start, start + duration))

    normal = max(0, cfg.n_activities - planted)
    for _ in range(normal):
        for _attempt in range(2000):
            duration = rng.randint(MIN_DURATION, MAX_DURATION)
            start = rng.randint(0, horizon - duration)
            window = (start, start + duration)
            if cfg.injection != INJECTION_NONE:
                break
            if _max_clique_with(*window, windows) <= cfg.n_teams:
                break
        else:
            raise ValueError(
                "could not place an activity under the concurrency cap; "
                "lower n_activities or raise n_teams"
            )
        windows.append(window)

    windows.sort()
    activities = [
        m.Activity(id=f"a{i + 1}", start=s, end=e) for i, (s, e) in enumerate(windows)
    ]

    compat: list[list[bool]] = []
    for _ in activities:
        row = [rng.random() < cfg.compat_density for _ in teams]
        if not any(row):
            row[rng.randrange(cfg.n_teams)] = True
        compat.append(row)
    if cfg.injection == INJECTION_OVERLOAD:
        # the planted group must be fully compatible so only counting matters
        planted_ids = _planted_ids(windows, cfg)
        for i, a in enumerate(activities):
            if a.id in planted_ids:
                compat[i] = [True] * cfg.n_teams

    instance = m.Instance(
        activities=activities,
        teams=teams,
        compat=compat,
        same_pairs=[],
        horizon_hours=cfg.horizon_hours,
    )

    if cfg.same_pair_count:
        instance.same_pairs.extend(_pick_same_pairs(instance, cfg, rng))
    m.require_valid(instance)
    return instance


def _planted_ids(sorted_windows: list[tuple[int, int]], cfg: GenConfig) -> set[str]:
    """Ids of the planted overload group after the start-time sort.

    The group is exactly the set of activities covering the anchor point,
    which may include normal activities too; marking all of them fully
    compatible preserves the overload argument.
    """
    anchor = cfg.horizon_hours * 60 // 2
    return {
        f"a{i + 1}"
        for i, (s, e) in enumerate(sorted_windows)
        if s <= anchor < e
    }


def _pick_same_pairs(
    instance: m.Instance, cfg: GenConfig, rng: random.Random
) -> list[tuple[str, str]]:
    """Sample disjoint same-team pairs that cannot create a contradiction.

    Members must not conflict in time and must share at least one
    compatible team; otherwise the pair would be infeasible on its own.
    """
    conflicting = {frozenset(p) for p in m.overlapping_pairs(instance)}
    ids = [a.id for a in instance.activities]
    used: set[str] = set()
    pairs: list[tuple[str, str]] = []
    attempts = 0
    while len(pairs) < cfg.same_pair_count:
        attempts += 1
        if attempts > 500 * cfg.same_pair_count:
            raise ValueError("could not place the requested same-team pairs")
        if len(ids) - len(used) < 2:
            raise ValueError("not enough activities for the requested pairs")
        a1, a2 = rng.sample(ids, 2)
        if a1 in used or a2 in used:
            continue
        if frozenset((a1, a2)) in conflicting:
            continue
        shared = set(instance.compatible_teams(a1)) & set(instance.compatible_teams(a2))
        if not shared:
            continue
        used.update((a1, a2))
        pairs.append((a1, a2))
    return pairs


# ---- brute-force oracles --------------------------------------------------

BRUTE_MAX_ACTIVITIES = 10
BRUTE_MAX_TEAMS = 4


def _guard(instance: m.Instance) -> None:
    if len(instance.activities) > BRUTE_MAX_ACTIVITIES:
        raise ValueError(f"oracle limited to {BRUTE_MAX_ACTIVITIES} activities")
    if len(instance.teams) > BRUTE_MAX_TEAMS:
        raise ValueError(f"oracle limited to {BRUTE_MAX_TEAMS} teams")


def _conflict_matrix(instance: m.Instance, strict_touch: bool) -> list[list[bool]]:
    n = len(instance.activities)
    mat = [[False] * n for _ in range(n)]
    for a1, a2 in m.overlapping_pairs(instance, strict_touch):
        i, j = instance.activity_index(a1), instance.activity_index(a2)
        mat[i][j] = mat[j][i] = True
    return mat


def brute_force_optimal(
    instance: m.Instance, strict_touch: bool = False
) -> int | None:
    """Exact minimal used-team count, or None when infeasible.

    Enumerates team choices activity by activity, pruning branches whose
    used-team count already matches the best complete allocation found.
    """
    _guard(instance)
    n = len(instance.activities)
    n_teams = len(instance.teams)
    conflict = _conflict_matrix(instance, strict_touch)
    pair_of = _same_pair_partners(instance)
    best: int | None = None
    choice: list[int] = [-1] * n

    def rec(i: int, used_count: int, used_mask: int) -> None:
        nonlocal best
        if best is not None and used_count >= best:
            return
        if i == n:
            if best is None or used_count < best:
                best = used_count
            return
        for j in range(n_teams):
            if not instance.compat[i][j]:
                continue
            if any(conflict[i][k] and choice[k] == j for k in range(i)):
                continue
            partner = pair_of.get(i)
            if partner is not None and partner < i and choice[partner] != j:
                continue
            choice[i] = j
            bit = 1 << j
            rec(i + 1, used_count + (0 if used_mask & bit else 1), used_mask | bit)
            choice[i] = -1

    rec(0, 0, 0)
    return best


def _same_pair_partners(instance: m.Instance) -> dict[int, int]:
    pair_of: dict[int, int] = {}
    for a1, a2 in instance.same_pairs:
        i, j = instance.activity_index(a1), instance.activity_index(a2)
        pair_of[i] = j
        pair_of[j] = i
    return pair_of


def brute_force_satisfiable(
    instance: m.Instance,
    enforced_ids: set[str],
    strict_touch: bool = False,
) -> bool:
    """Can all enforced activities be allocated, leaving the rest unset?

    Mirrors the encoding's semantics for partial allocations: same-team
    pairs are hard, so either both members are allocated to one team or
    neither member is allocated at all.
    """
    _guard(instance)
    n = len(instance.activities)
    n_teams = len(instance.teams)
    conflict = _conflict_matrix(instance, strict_touch)
    pair_of = _same_pair_partners(instance)
    enforced = [a.id in enforced_ids for a in instance.activities]
    choice: list[int] = [-1] * n  # -1 = unallocated

    def rec(i: int) -> bool:
        if i == n:
            return True
        options = list(range(n_teams)) if enforced[i] else [-1] + list(range(n_teams))
        for j in options:
            if j >= 0:
                if not instance.compat[i][j]:
                    continue
                if any(conflict[i][k] and choice[k] == j for k in range(i)):
                    continue
            partner = pair_of.get(i)
            if partner is not None and partner < i and choice[partner] != j:
                continue
            choice[i] = j
            if rec(i + 1):
                return True
            choice[i] = -1
        return False

    return rec(0)


def brute_force_max_weight(
    instance: m.Instance,
    weights: PriorityWeights | None = None,
    strict_touch: bool = False,
) -> int:
    """Exact maximal total weight over allocatable activity subsets."""
    _guard(instance)
    weights = weights or PriorityWeights()
    acts = instance.activities
    n = len(acts)
    best = 0
    for mask in range(1 << n):
        subset = {acts[i].id for i in range(n) if mask >> i & 1}
        w = sum(weights.of(aid) for aid in subset)
        if w > best and brute_force_satisfiable(instance, subset, strict_touch):
            best = w
    return best


# ---- benchmark harnesses ---------------------------------------------------

ACTIVITIES_PER_LENGTH = {6: 50, 8: 70, 24: 300}


@dataclass
class OptRow:
    horizon_hours: int
    clique: bool
    symmetry: bool
    t_init: float
    t_solve: float
    t_total: float
    fraction_optimal: float
    repetitions: int


@dataclass
class ExplainRow:
    horizon_hours: int
    mus_time: float
    mus_size: float
    repetitions: int


def run_opt_benchmark(
    lengths=(6, 8, 24),
    timeout: float = 30.0,
    repetitions: int = 5,
    n_teams: int = 20,
    activities_per_length: dict[int, int] | None = None,
    seed: int = 0,
) -> list[OptRow]:
    """Mean encode/solve times per (length, clique, symmetry) combination.

    Runs that hit the budget record t_solve equal to the timeout and count
    as not proven optimal.
    """
    per_length = activities_per_length or ACTIVITIES_PER_LENGTH
    rows: list[OptRow] = []
    for hours in lengths:
        n_acts = per_length.get(hours, hours * 12)
        for clique in (True, False):
            for symmetry in (True, False):
                t_inits, t_solves, optimal = [], [], 0
                for rep in range(repetitions):
                    cfg = GenConfig(
                        horizon_hours=hours,
                        n_activities=n_acts,
                        n_teams=n_teams,
                        seed=seed + rep,
                    )
                    instance = generate_instance(cfg)
                    t0 = time.monotonic()
                    formula = encode(
                        instance, EncodeConfig(clique=clique, symmetry=symmetry)
                    )
                    engine = FormulaSolver(formula)
                    t_inits.append(time.monotonic() - t0)
                    t1 = time.monotonic()
                    result = minimize_used_teams(engine, budget=timeout)
                    if isinstance(result, OptimalSolution) and result.proven_optimal:
                        optimal += 1
                        t_solves.append(time.monotonic() - t1)
                    else:
                        t_solves.append(timeout)
                n = repetitions
                rows.append(
                    OptRow(
                        horizon_hours=hours,
                        clique=clique,
                        symmetry=symmetry,
                        t_init=sum(t_inits) / n,
                        t_solve=sum(t_solves) / n,
                        t_total=(sum(t_inits) + sum(t_solves)) / n,
                        fraction_optimal=optimal / n,
                        repetitions=n,
                    )
                )
    return rows


def run_explain_benchmark(
    lengths=(6, 8, 24),
    repetitions: int = 5,
    n_teams: int = 20,
    activities_per_length: dict[int, int] | None = None,
    budget: float = 30.0,
    seed: int = 0,
) -> list[ExplainRow]:
    """Mean MUS wall time and size per horizon length on overloaded instances."""
    per_length = activities_per_length or ACTIVITIES_PER_LENGTH
    rows: list[ExplainRow] = []
    for hours in lengths:
        n_acts = per_length.get(hours, hours * 12)
        times, sizes = [], []
        for rep in range(repetitions):
            cfg = GenConfig(
                horizon_hours=hours,
                n_activities=n_acts,
                n_teams=n_teams,
                injection=INJECTION_OVERLOAD,
                overload=1,
                seed=seed + rep,
            )
            instance = generate_instance(cfg)
            engine = FormulaSolver(encode(instance, EncodeConfig()))
            mus = find_mus(engine, budget=budget)
            times.append(mus.wall_time)
            sizes.append(len(mus.labels))
        rows.append(
            ExplainRow(
                horizon_hours=hours,
                mus_time=sum(times) / repetitions,
                mus_size=sum(sizes) / repetitions,
                repetitions=repetitions,
            )
        )
    return rows


def rows_to_dicts(rows) -> list[dict]:
    return [vars(r).copy() for r in rows]


def rows_to_csv(rows) -> str:
    dicts = rows_to_dicts(rows)
    if not dicts:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(dicts[0]))
    writer.writeheader()
    writer.writerows(dicts)
    return buf.getvalue()


def rows_to_text(rows) -> str:
    dicts = rows_to_dicts(rows)
    if not dicts:
        return "(empty report)\n"
    headers = list(dicts[0])
    cells = [
        [f"{v:.3f}" if isinstance(v, float) else str(v) for v in d.values()]
        for d in dicts
    ]
    widths = [
        max(len(headers[c]), max(len(row[c]) for row in cells))
        for c in range(len(headers))
    ]
    lines = [
        "  ".join(h.ljust(w) for h, w in zip(headers, widths)),
        "  ".join("-" * w for w in widths),
    ]
    for row in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)))
    return "\n".join(lines) + "\n"
