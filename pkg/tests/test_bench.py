import pytest

from conftest import build_instance, tiny_feasible, tiny_infeasible
from teamalloc import model as m
from teamalloc.bench import (
    GenConfig,
    INJECTION_OVERLOAD,
    brute_force_max_weight,
    brute_force_optimal,
    brute_force_satisfiable,
    generate_instance,
    rows_to_csv,
    rows_to_dicts,
    rows_to_text,
    run_explain_benchmark,
    run_opt_benchmark,
)
from teamalloc.encode import encode
from teamalloc.optimize import Infeasible, minimize_used_teams


def test_gen_config_validation():
    with pytest.raises(ValueError):
        GenConfig(horizon_hours=0, n_activities=1)
    with pytest.raises(ValueError):
        GenConfig(horizon_hours=6, n_activities=1, compat_density=0)
    with pytest.raises(ValueError):
        GenConfig(horizon_hours=6, n_activities=1, injection="chaos")
    with pytest.raises(ValueError):
        GenConfig(horizon_hours=1, n_activities=1)  # shorter than max duration


def test_generator_is_reproducible():
    cfg = GenConfig(horizon_hours=6, n_activities=30, n_teams=10, seed=11)
    assert generate_instance(cfg) == generate_instance(cfg)
    other = GenConfig(horizon_hours=6, n_activities=30, n_teams=10, seed=12)
    assert generate_instance(other) != generate_instance(cfg)


def test_generator_produces_valid_instances_in_horizon():
    cfg = GenConfig(horizon_hours=8, n_activities=40, n_teams=10, seed=3)
    inst = generate_instance(cfg)
    assert m.validate_instance(inst) == []
    assert len(inst.activities) == 40
    horizon = 8 * 60
    for a in inst.activities:
        assert 0 <= a.start < a.end <= horizon
        assert 15 <= a.end - a.start <= 180
    starts = [a.start for a in inst.activities]
    assert starts == sorted(starts)


def test_generator_guarantees_a_compatible_team():
    cfg = GenConfig(
        horizon_hours=6, n_activities=25, n_teams=8, compat_density=0.1, seed=5
    )
    inst = generate_instance(cfg)
    for a in inst.activities:
        assert inst.compatible_teams(a.id)


def test_empty_instance_trivially_feasible():
    cfg = GenConfig(horizon_hours=6, n_activities=0, n_teams=3, seed=0)
    inst = generate_instance(cfg)
    assert inst.activities == []
    result = minimize_used_teams(encode(inst))
    assert result.objective == 0


def test_dense_capped_instances_are_feasible():
    for seed in range(5):
        cfg = GenConfig(horizon_hours=6, n_activities=25, n_teams=8, seed=seed)
        inst = generate_instance(cfg)
        assert m.max_conflict_clique(inst) <= 8
        result = minimize_used_teams(encode(inst))
        assert not isinstance(result, Infeasible)


def test_overload_injection_is_infeasible_for_solver_and_oracle():
    cfg = GenConfig(
        horizon_hours=6, n_activities=5, n_teams=2,
        injection=INJECTION_OVERLOAD, overload=1, seed=4,
    )
    inst = generate_instance(cfg)
    assert isinstance(minimize_used_teams(encode(inst)), Infeasible)
    assert brute_force_optimal(inst) is None


def test_overload_scales_with_team_count():
    cfg = GenConfig(
        horizon_hours=8, n_activities=30, n_teams=10,
        injection=INJECTION_OVERLOAD, overload=2, seed=9,
    )
    inst = generate_instance(cfg)
    assert m.max_conflict_clique(inst) >= 12
    assert isinstance(minimize_used_teams(encode(inst)), Infeasible)


def test_same_pairs_are_disjoint_and_consistent():
    cfg = GenConfig(
        horizon_hours=6, n_activities=20, n_teams=8, same_pair_count=3, seed=2
    )
    inst = generate_instance(cfg)
    assert len(inst.same_pairs) == 3
    members = [aid for pair in inst.same_pairs for aid in pair]
    assert len(members) == len(set(members))
    conflicting = {frozenset(p) for p in m.overlapping_pairs(inst)}
    for a1, a2 in inst.same_pairs:
        assert frozenset((a1, a2)) not in conflicting
        assert set(inst.compatible_teams(a1)) & set(inst.compatible_teams(a2))


def test_brute_force_guard():
    big = build_instance([(f"a{i}", i * 100, i * 100 + 50) for i in range(11)], 2)
    with pytest.raises(ValueError, match="limited"):
        brute_force_optimal(big)
    wide = build_instance([("a1", 0, 50)], 5)
    with pytest.raises(ValueError, match="limited"):
        brute_force_optimal(wide)


def test_brute_force_known_answers():
    assert brute_force_optimal(tiny_feasible()) == 2
    assert brute_force_optimal(tiny_infeasible()) is None
    one = build_instance([("a1", 0, 50)], 1)
    assert brute_force_optimal(one) == 1


def test_brute_force_satisfiable_partial_semantics():
    inst = tiny_infeasible()
    ids = {a.id for a in inst.activities}
    assert not brute_force_satisfiable(inst, ids)
    assert brute_force_satisfiable(inst, {"a1", "a2"})
    assert brute_force_satisfiable(inst, set())
    # hard same-pair: allocating one member forces the other
    paired = build_instance(
        [("a1", 0, 50), ("a2", 100, 150)],
        1,
        compat=[[True], [False]],
        same_pairs=[("a1", "a2")],
    )
    assert not brute_force_satisfiable(paired, {"a1"})
    assert brute_force_satisfiable(paired, set())


def test_brute_force_max_weight_tiny():
    from teamalloc.optimize import PriorityWeights

    inst = tiny_infeasible()
    assert brute_force_max_weight(inst) == 2
    assert brute_force_max_weight(inst, PriorityWeights({"a1": 5})) == 6


def test_opt_benchmark_shape():
    rows = run_opt_benchmark(
        lengths=(6, 8), timeout=10, repetitions=1,
        n_teams=5, activities_per_length={6: 10, 8: 12},
    )
    assert len(rows) == 2 * 2 * 2
    for row in rows:
        assert 0 <= row.fraction_optimal <= 1
        assert row.t_total >= row.t_init
    text = rows_to_text(rows)
    assert "fraction_optimal" in text
    csv_text = rows_to_csv(rows)
    assert csv_text.splitlines()[0].startswith("horizon_hours,")
    assert len(rows_to_dicts(rows)) == 8


def test_explain_benchmark_shape():
    rows = run_explain_benchmark(
        lengths=(6,), repetitions=2, n_teams=3,
        activities_per_length={6: 8},
    )
    assert len(rows) == 1
    assert rows[0].mus_size >= 1
    assert rows[0].mus_time >= 0
