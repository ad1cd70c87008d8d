"""JSON file formats: instances, solutions, explanations, session snapshots.

Instance files carry compatibility as a per-activity allow-list (sparse);
internally it becomes the dense matrix.  Parsing is strict: unknown fields
are rejected and all times must be plain integers.
"""

from __future__ import annotations

import json
from typing import Any

from . import model as m
from .encode import EncodeConfig, RELAXABLE_KINDS, TASK_ALLOCATED


class FormatError(ValueError):
    pass


def _require_keys(obj: dict, required: set[str], optional: set[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected an object")
    keys = set(obj)
    missing = required - keys
    unknown = keys - required - optional
    if missing:
        raise FormatError(f"{where}: missing fields {sorted(missing)}")
    if unknown:
        raise FormatError(f"{where}: unknown fields {sorted(unknown)}")


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormatError(f"{where}: expected an integer, got {value!r}")
    return value


def instance_from_dict(doc: dict) -> m.Instance:
    _require_keys(
        doc,
        {"horizon_hours", "activities", "teams", "compat"},
        {"same_pairs"},
        "instance",
    )
    activities = []
    for i, entry in enumerate(doc["activities"]):
        _require_keys(entry, {"id", "start", "end"}, {"label"}, f"activities[{i}]")
        activities.append(
            m.Activity(
                id=str(entry["id"]),
                start=_int(entry["start"], f"activities[{i}].start"),
                end=_int(entry["end"], f"activities[{i}].end"),
                label=entry.get("label"),
            )
        )
    teams = []
    for i, entry in enumerate(doc["teams"]):
        _require_keys(entry, {"id"}, {"label"}, f"teams[{i}]")
        teams.append(m.Team(id=str(entry["id"]), label=entry.get("label")))
    team_ids = [t.id for t in teams]
    compat_doc = doc["compat"]
    if not isinstance(compat_doc, dict):
        raise FormatError("compat: expected an object mapping activity id to team ids")
    act_ids = {a.id for a in activities}
    for aid in compat_doc:
        if aid not in act_ids:
            raise FormatError(f"compat: unknown activity {aid}")
    compat = []
    for a in activities:
        allowed = compat_doc.get(a.id, [])
        for tid in allowed:
            if tid not in team_ids:
                raise FormatError(f"compat[{a.id}]: unknown team {tid}")
        allowed_set = set(allowed)
        compat.append([t in allowed_set for t in team_ids])
    same_pairs = []
    for i, pair in enumerate(doc.get("same_pairs", [])):
        if not isinstance(pair, list) or len(pair) != 2:
            raise FormatError(f"same_pairs[{i}]: expected a pair of activity ids")
        same_pairs.append((str(pair[0]), str(pair[1])))
    instance = m.Instance(
        activities=activities,
        teams=teams,
        compat=compat,
        same_pairs=same_pairs,
        horizon_hours=_int(doc["horizon_hours"], "horizon_hours"),
    )
    report = m.validate_instance(instance)
    if report:
        raise FormatError("; ".join(v.message for v in report))
    return instance


def instance_to_dict(instance: m.Instance) -> dict:
    return {
        "horizon_hours": instance.horizon_hours,
        "activities": [
            {"id": a.id, "start": a.start, "end": a.end}
            | ({"label": a.label} if a.label is not None else {})
            for a in instance.activities
        ],
        "teams": [
            {"id": t.id} | ({"label": t.label} if t.label is not None else {})
            for t in instance.teams
        ],
        "compat": {
            a.id: [
                t.id
                for j, t in enumerate(instance.teams)
                if instance.compat[i][j]
            ]
            for i, a in enumerate(instance.activities)
        },
        "same_pairs": [list(p) for p in instance.same_pairs],
    }


def load_instance(path: str) -> m.Instance:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"not valid JSON: {exc}") from exc
    return instance_from_dict(doc)


def save_instance(instance: m.Instance, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(instance_to_dict(instance), fh, indent=2, sort_keys=True)
        fh.write("\n")


def config_from_dict(doc: dict) -> EncodeConfig:
    _require_keys(
        doc,
        set(),
        {"clique", "symmetry", "soft_kinds", "strict_touch"},
        "config",
    )
    kinds = doc.get("soft_kinds", [TASK_ALLOCATED])
    bad = set(kinds) - RELAXABLE_KINDS
    if bad:
        raise FormatError(f"config.soft_kinds: not relaxable: {sorted(bad)}")
    return EncodeConfig(
        clique=bool(doc.get("clique", True)),
        symmetry=bool(doc.get("symmetry", True)),
        soft_kinds=frozenset(kinds),
        strict_touch=bool(doc.get("strict_touch", False)),
    )


def config_to_dict(cfg: EncodeConfig) -> dict:
    return {
        "clique": cfg.clique,
        "symmetry": cfg.symmetry,
        "soft_kinds": sorted(cfg.soft_kinds),
        "strict_touch": cfg.strict_touch,
    }


def solution_to_dict(
    objective: int | None,
    allocation: dict[str, str],
    unallocated: list[str],
    proven_optimal: bool,
    relaxed_labels: list[str],
    stats: dict | None = None,
) -> dict:
    return {
        "objective": objective,
        "allocation": dict(sorted(allocation.items())),
        "unallocated": sorted(unallocated),
        "proven_optimal": proven_optimal,
        "relaxed_labels": list(relaxed_labels),
        "stats": stats or {},
    }


def dump_json(doc: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
