"""Shared instance builders for the test suite."""

from __future__ import annotations

import random

from teamalloc import model as m


def build_instance(windows, n_teams, compat=None, same_pairs=None, horizon=24):
    """Instance from (id, start, end) triples; compat defaults to all-True."""
    acts = [m.Activity(aid, s, e) for aid, s, e in windows]
    teams = [m.Team(f"t{j + 1}") for j in range(n_teams)]
    if compat is None:
        compat = [[True] * n_teams for _ in acts]
    return m.Instance(
        activities=acts,
        teams=teams,
        compat=compat,
        same_pairs=list(same_pairs or []),
        horizon_hours=horizon,
    )


def tiny_feasible() -> m.Instance:
    """Three tasks, two teams, optimum 2: a1 and a2 overlap, a3 is free."""
    return build_instance(
        [("a1", 0, 600), ("a2", 300, 900), ("a3", 1200, 1380)], 2
    )


def tiny_infeasible() -> m.Instance:
    """Three identical windows, two teams: one conflict of three tasks."""
    return build_instance(
        [("a1", 0, 600), ("a2", 0, 600), ("a3", 0, 600)], 2
    )


def two_conflicts() -> m.Instance:
    """Two independent three-task pile-ups on two teams."""
    return build_instance(
        [
            ("a1", 0, 100), ("a2", 0, 100), ("a3", 0, 100),
            ("b1", 200, 300), ("b2", 200, 300), ("b3", 200, 300),
        ],
        2,
    )


def random_small_instance(
    seed: int,
    max_acts: int = 10,
    max_teams: int = 4,
    horizon_minutes: int = 240,
    density: float = 0.8,
    same_pair_prob: float = 0.25,
) -> m.Instance:
    """Small random instance for oracle-agreement and property tests.

    May be feasible or infeasible; activities can have zero compatible
    teams, which oracle and solver must both report as infeasible.
    """
    rng = random.Random(seed)
    n_acts = rng.randint(1, max_acts)
    n_teams = rng.randint(1, max_teams)
    acts = []
    for i in range(n_acts):
        dur = rng.randint(10, 90)
        start = rng.randint(0, horizon_minutes - dur)
        acts.append(m.Activity(f"a{i + 1}", start, start + dur))
    teams = [m.Team(f"t{j + 1}") for j in range(n_teams)]
    compat = [[rng.random() < density for _ in teams] for _ in acts]
    same_pairs: list[tuple[str, str]] = []
    if n_acts >= 2 and rng.random() < same_pair_prob:
        i, j = rng.sample(range(n_acts), 2)
        same_pairs.append((acts[i].id, acts[j].id))
    return m.Instance(
        activities=acts,
        teams=teams,
        compat=compat,
        same_pairs=same_pairs,
        horizon_hours=max(1, horizon_minutes // 60),
    )
