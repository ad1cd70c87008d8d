import pytest

from conftest import build_instance, random_small_instance, tiny_feasible
from teamalloc import model as m
from teamalloc.encode import (
    COMPATIBILITY,
    OVERLAP,
    SAME_PAIR,
    SYMMETRY,
    TASK_ALLOCATED,
    USED_LINK,
    ConstraintLabel,
    EncodeConfig,
    UnknownLabelError,
    add_override,
    encode,
    relax,
)


def test_config_rejects_unrelaxable_kinds():
    with pytest.raises(ValueError):
        EncodeConfig(soft_kinds=frozenset({USED_LINK}))
    with pytest.raises(ValueError):
        EncodeConfig(soft_kinds=frozenset({"Nonsense"}))


def test_label_id_round_trip():
    label = ConstraintLabel(OVERLAP, ("a1", "a2"), "text")
    assert label.id == "Overlap:a1+a2"
    assert str(label) == label.id


def test_tiny_structure():
    inst = tiny_feasible()
    f = encode(inst)
    assert len(f.alloc_var) == 6
    assert len(f.used_var) == 2
    task_labels = f.labels_of_kind(TASK_ALLOCATED)
    assert [l.subject for l in task_labels] == [("a1",), ("a2",), ("a3",)]
    assert all(f.is_soft(l) for l in task_labels)
    overlap_labels = f.labels_of_kind(OVERLAP)
    assert [l.subject for l in overlap_labels] == [("a1", "a2")]
    assert not any(f.is_soft(l) for l in overlap_labels)
    # all teams compatible: no compatibility units
    assert f.labels_of_kind(COMPATIBILITY) == []
    # both teams equivalent: one symmetry chain
    assert len(f.labels_of_kind(SYMMETRY)) == 1


def test_soft_group_has_selector_and_link_clauses():
    inst = tiny_feasible()
    f = encode(inst)
    label = f.labels_of_kind(TASK_ALLOCATED)[0]
    sel = f.selector(label)
    clauses = f.group_clauses[label.id]
    avars = [f.alloc_var[("a1", t.id)] for t in inst.teams]
    assert [-sel] + avars in clauses
    for v in avars:
        assert [-v, sel] in clauses


def test_hard_groups_have_no_selector():
    inst = tiny_feasible()
    f = encode(inst, EncodeConfig(soft_kinds=frozenset()))
    for label in f.groups:
        assert f.groups[label] is None
    with pytest.raises(UnknownLabelError):
        f.selector(f.labels_of_kind(TASK_ALLOCATED)[0])
    assert f.assumptions_all() == []


def test_relax_drops_only_named_selectors():
    f = encode(tiny_feasible())
    labels = f.labels_of_kind(TASK_ALLOCATED)
    kept = relax(f, [labels[1]])
    assert f.selector(labels[1]) not in kept
    assert f.selector(labels[0]) in kept
    assert f.selector(labels[2]) in kept


def test_relax_rejects_unknown_and_hard_labels():
    f = encode(tiny_feasible())
    with pytest.raises(UnknownLabelError):
        relax(f, ["TaskAllocated:zzz"])
    with pytest.raises(UnknownLabelError):
        relax(f, [f.labels_of_kind(OVERLAP)[0]])


def test_clique_pairs_are_subsumed_by_overlap_pairs():
    """Every clique pair is an overlap pair, so the toggle adds no clauses."""
    for seed in range(60):
        inst = random_small_instance(seed)
        pairs = {frozenset(p) for p in m.overlapping_pairs(inst)}
        for clique in m.deduplicated_cliques(inst):
            members = sorted(clique)
            for i in range(len(members)):
                for j in range(i + 1, len(members)):
                    assert frozenset((members[i], members[j])) in pairs
        with_clique = encode(inst, EncodeConfig(clique=True))
        without = encode(inst, EncodeConfig(clique=False))
        assert with_clique.clauses == without.clauses


def test_symmetry_toggle_adds_ordering_clauses():
    inst = tiny_feasible()
    on = encode(inst, EncodeConfig(symmetry=True))
    off = encode(inst, EncodeConfig(symmetry=False))
    extra = [c for c in on.clauses if c not in off.clauses]
    assert [on.used_var["t1"], -on.used_var["t2"]] in extra
    assert off.labels_of_kind(SYMMETRY) == []


def test_same_pair_clauses_are_biconditional():
    inst = build_instance(
        [("a1", 0, 60), ("a2", 100, 160)], 2, same_pairs=[("a1", "a2")]
    )
    f = encode(inst)
    label = f.labels_of_kind(SAME_PAIR)[0]
    clauses = f.group_clauses[label.id]
    for t in inst.teams:
        v1, v2 = f.alloc_var[("a1", t.id)], f.alloc_var[("a2", t.id)]
        assert [-v1, v2] in clauses
        assert [v1, -v2] in clauses


def test_compatibility_units_forbid_assignment():
    inst = build_instance(
        [("a1", 0, 60)], 2, compat=[[True, False]]
    )
    f = encode(inst)
    labels = f.labels_of_kind(COMPATIBILITY)
    assert [l.subject for l in labels] == [("a1", "t2")]
    assert [-f.alloc_var[("a1", "t2")]] in f.group_clauses[labels[0].id]


def test_group_satisfied_reads_model_through_the_guard():
    inst = tiny_feasible()
    f = encode(inst)
    label = f.labels_of_kind(TASK_ALLOCATED)[0]
    model = [False] * (f.var_count + 1)
    assert not f.group_satisfied(label, model)
    model[f.alloc_var[("a1", "t1")]] = True
    assert f.group_satisfied(label, model)
    model[f.alloc_var[("a1", "t2")]] = True
    assert not f.group_satisfied(label, model)  # at-most-one broken


def test_add_override_modes_and_guarded_units():
    f = encode(tiny_feasible())
    force = add_override(f, "a1", "t2", "force")
    forbid = add_override(f, "a2", "t2", "forbid")
    v1 = f.alloc_var[("a1", "t2")]
    v2 = f.alloc_var[("a2", "t2")]
    assert [-f.selector(force), v1] in f.group_clauses[force.id]
    assert [-f.selector(forbid), -v2] in f.group_clauses[forbid.id]
    with pytest.raises(ValueError):
        add_override(f, "a1", "t1", "maybe")


def test_phase_hints_cover_alloc_vars_and_selectors():
    f = encode(tiny_feasible())
    for v in f.alloc_var.values():
        assert f.phase_hints[v] is True
    for s in f.groups.values():
        if s is not None:
            assert f.phase_hints[s] is True


def test_to_dimacs_mentions_every_group():
    f = encode(tiny_feasible())
    text = f.to_dimacs()
    assert text.startswith(f"p cnf {f.var_count} {len(f.clauses)}")
    for label in f.groups:
        assert f"c group {label.id}" in text


def test_encode_is_deterministic():
    a = encode(random_small_instance(5))
    b = encode(random_small_instance(5))
    assert a.clauses == b.clauses
    assert list(a.groups) == list(b.groups)
    assert a.alloc_var == b.alloc_var
