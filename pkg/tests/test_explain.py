import itertools

import pytest

from conftest import build_instance, random_small_instance, tiny_feasible, tiny_infeasible
from teamalloc.bench import brute_force_satisfiable
from teamalloc.encode import encode
from teamalloc.explain import (
    HardCoreConflictError,
    InputSatisfiableError,
    describe_conflict,
    find_mcs,
    find_mus,
)
from teamalloc.optimize import FormulaSolver


def _ids(labels):
    return [l.id for l in labels]


def _activity_set(labels):
    return {l.subject[0] for l in labels}


def test_tiny_mus_is_all_three_tasks():
    mus = find_mus(encode(tiny_infeasible()))
    assert _ids(mus.labels) == [
        "TaskAllocated:a1", "TaskAllocated:a2", "TaskAllocated:a3"
    ]
    assert mus.minimal
    assert mus.solver_calls >= 1


def test_mus_on_satisfiable_input_raises():
    with pytest.raises(InputSatisfiableError):
        find_mus(encode(tiny_feasible()))


def test_tiny_mcs_is_one_task():
    mcs = find_mcs(encode(tiny_infeasible()))
    assert len(mcs.labels) == 1
    assert mcs.minimal


def test_five_copies_two_teams_mcs_size_three():
    inst = build_instance([(f"a{i}", 0, 60) for i in range(1, 6)], 2)
    mcs = find_mcs(encode(inst))
    assert len(mcs.labels) == 3
    mus = find_mus(encode(inst))
    assert len(mus.labels) == 3  # any 3 of the 5 conflict on 2 teams


def test_mcs_on_hard_unsat_raises():
    from teamalloc.encode import EncodeConfig

    with pytest.raises(HardCoreConflictError):
        find_mcs(encode(tiny_infeasible(), EncodeConfig(soft_kinds=frozenset())))


def test_mcs_spans_hard_same_pair_dependency():
    inst = build_instance(
        [("a1", 0, 60), ("a2", 100, 160)],
        1,
        compat=[[True], [False]],
        same_pairs=[("a1", "a2")],
    )
    # same-pair is hard and a2 has no compatible team, so neither task can
    # ever be allocated: the correction set must drop both allocation groups
    mcs = find_mcs(encode(inst))
    assert _activity_set(mcs.labels) == {"a1", "a2"}


def test_mus_definition_checks_by_independent_oracle():
    count = 0
    for seed in range(300):
        inst = random_small_instance(seed, max_acts=6, max_teams=3)
        all_ids = {a.id for a in inst.activities}
        if brute_force_satisfiable(inst, all_ids):
            continue
        count += 1
        mus = find_mus(encode(inst))
        assert mus.minimal
        ids = _activity_set(mus.labels)
        assert not brute_force_satisfiable(inst, ids), f"seed {seed}"
        for drop in ids:
            assert brute_force_satisfiable(inst, ids - {drop}), f"seed {seed}"
        if count >= 25:
            break
    assert count >= 10


def test_mcs_definition_checks_by_independent_oracle():
    count = 0
    for seed in range(300):
        inst = random_small_instance(seed, max_acts=6, max_teams=3)
        all_ids = {a.id for a in inst.activities}
        if brute_force_satisfiable(inst, all_ids):
            continue
        count += 1
        mcs = find_mcs(encode(inst))
        assert mcs.minimal
        removed = _activity_set(mcs.labels)
        assert brute_force_satisfiable(inst, all_ids - removed), f"seed {seed}"
        for r in range(len(removed)):
            for subset in itertools.combinations(sorted(removed), r):
                assert not brute_force_satisfiable(
                    inst, all_ids - set(subset)
                ), f"seed {seed}"
        if count >= 25:
            break
    assert count >= 10


def test_mus_and_mcs_restricted_to_given_soft_labels():
    inst = build_instance([(f"a{i}", 0, 60) for i in range(1, 5)], 2)
    f = encode(inst)
    engine = FormulaSolver(f)
    subset = f.labels_of_kind("TaskAllocated")[:3]
    mus = find_mus(engine, soft=subset)
    assert set(mus.labels) <= set(subset)
    mcs = find_mcs(engine, soft=subset)
    assert set(mcs.labels) <= set(subset)


def test_explanations_are_deterministic():
    inst = tiny_infeasible()

    def run():
        engine = FormulaSolver(encode(inst))
        mus = find_mus(engine)
        mcs = find_mcs(engine)
        return _ids(mus.labels), _ids(mcs.labels)

    assert run() == run()


def test_describe_conflict_texts_and_involved_ids():
    f = encode(tiny_infeasible())
    mus = find_mus(f)
    expl = describe_conflict(mus.labels, f, "MUS")
    assert expl.kind == "MUS"
    assert expl.involved_activities == ["a1", "a2", "a3"]
    assert expl.involved_teams == ["t1", "t2"]
    for label in mus.labels:
        assert "must be assigned" in expl.text[label.id]
    by_id = describe_conflict([l.id for l in mus.labels], f, "MUS")
    assert by_id.text == expl.text


def test_describe_conflict_rejects_foreign_labels():
    f1 = encode(tiny_infeasible())
    f2 = encode(build_instance([("z9", 0, 60)], 1))
    label = f2.labels_of_kind("TaskAllocated")[0]
    with pytest.raises(KeyError):
        describe_conflict([label], f1)


def test_mus_with_fixed_assumptions():
    inst = build_instance([(f"a{i}", 0, 60) for i in range(1, 4)], 2)
    f = encode(inst)
    engine = FormulaSolver(f)
    labels = f.labels_of_kind("TaskAllocated")
    fixed = [f.selector(labels[0])]
    mus = find_mus(engine, soft=labels[1:], fixed_assumptions=fixed)
    assert set(mus.labels) == set(labels[1:])


def test_budget_exhaustion_returns_best_effort():
    inst = build_instance([(f"a{i}", 0, 60) for i in range(1, 6)], 2)
    mus = find_mus(encode(inst), budget=0.0)
    assert not mus.minimal
    assert len(mus.labels) >= 3
