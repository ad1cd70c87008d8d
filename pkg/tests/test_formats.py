import json

import pytest
from hypothesis import given, strategies as st

from conftest import build_instance, random_small_instance
from teamalloc import formats
from teamalloc.encode import EncodeConfig, TASK_ALLOCATED


def tiny_doc():
    return {
        "horizon_hours": 24,
        "activities": [
            {"id": "a1", "start": 0, "end": 600},
            {"id": "a2", "start": 300, "end": 900},
        ],
        "teams": [{"id": "t1"}, {"id": "t2"}],
        "compat": {"a1": ["t1", "t2"], "a2": ["t1"]},
        "same_pairs": [],
    }


def test_parse_valid_document():
    inst = formats.instance_from_dict(tiny_doc())
    assert [a.id for a in inst.activities] == ["a1", "a2"]
    assert inst.compat == [[True, True], [True, False]]


def test_round_trip_identity_on_fixed_doc():
    inst = formats.instance_from_dict(tiny_doc())
    assert formats.instance_from_dict(formats.instance_to_dict(inst)) == inst


@given(st.integers(min_value=0, max_value=10_000))
def test_round_trip_identity_on_random_instances(seed):
    inst = random_small_instance(seed)
    again = formats.instance_from_dict(formats.instance_to_dict(inst))
    assert again == inst


def test_unknown_fields_rejected():
    doc = tiny_doc() | {"extra": 1}
    with pytest.raises(formats.FormatError, match="unknown fields"):
        formats.instance_from_dict(doc)
    doc = tiny_doc()
    doc["activities"][0]["color"] = "red"
    with pytest.raises(formats.FormatError, match="unknown fields"):
        formats.instance_from_dict(doc)


def test_missing_fields_rejected():
    doc = tiny_doc()
    del doc["teams"]
    with pytest.raises(formats.FormatError, match="missing fields"):
        formats.instance_from_dict(doc)


def test_times_must_be_integers_not_bools_or_floats():
    doc = tiny_doc()
    doc["activities"][0]["start"] = 0.5
    with pytest.raises(formats.FormatError, match="expected an integer"):
        formats.instance_from_dict(doc)
    doc = tiny_doc()
    doc["activities"][0]["start"] = True
    with pytest.raises(formats.FormatError, match="expected an integer"):
        formats.instance_from_dict(doc)


def test_unknown_ids_in_compat_rejected():
    doc = tiny_doc()
    doc["compat"]["zz"] = ["t1"]
    with pytest.raises(formats.FormatError, match="unknown activity"):
        formats.instance_from_dict(doc)
    doc = tiny_doc()
    doc["compat"]["a1"] = ["t9"]
    with pytest.raises(formats.FormatError, match="unknown team"):
        formats.instance_from_dict(doc)


def test_invalid_instance_content_rejected():
    doc = tiny_doc()
    doc["activities"][0]["end"] = 0
    with pytest.raises(formats.FormatError, match="start < end"):
        formats.instance_from_dict(doc)


def test_file_round_trip(tmp_path):
    inst = random_small_instance(7)
    path = tmp_path / "instance.json"
    formats.save_instance(inst, str(path))
    assert formats.load_instance(str(path)) == inst


def test_load_rejects_malformed_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("not json")
    with pytest.raises(formats.FormatError, match="not valid JSON"):
        formats.load_instance(str(path))


def test_config_round_trip_and_defaults():
    cfg = formats.config_from_dict({})
    assert cfg == EncodeConfig()
    cfg2 = formats.config_from_dict(
        {"clique": False, "symmetry": False, "soft_kinds": ["Overlap"],
         "strict_touch": True}
    )
    assert formats.config_from_dict(formats.config_to_dict(cfg2)) == cfg2
    with pytest.raises(formats.FormatError, match="not relaxable"):
        formats.config_from_dict({"soft_kinds": ["UsedLink"]})
    with pytest.raises(formats.FormatError, match="unknown fields"):
        formats.config_from_dict({"budget": 5})


def test_solution_dict_sorted_and_json_ready():
    doc = formats.solution_to_dict(
        2, {"b": "t1", "a": "t2"}, ["z", "a"], True, [TASK_ALLOCATED]
    )
    assert list(doc["allocation"]) == ["a", "b"]
    assert doc["unallocated"] == ["a", "z"]
    json.dumps(doc)


def test_labels_preserved_through_round_trip():
    inst = build_instance([("a1", 0, 60)], 1)
    inst.activities[0] = type(inst.activities[0])("a1", 0, 60, label="Repair")
    inst.teams[0] = type(inst.teams[0])("t1", label="Crew A")
    again = formats.instance_from_dict(formats.instance_to_dict(inst))
    assert again.activities[0].label == "Repair"
    assert again.teams[0].label == "Crew A"
