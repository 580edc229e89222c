import json
import math
import pathlib
import subprocess

import jsonschema
import pytest

import longcycle

ROOT = pathlib.Path(__file__).resolve().parents[2]


def test_generate_is_deterministic():
    a = longcycle.generate_digraph(2000, 3.0, 7)
    b = longcycle.generate_digraph(2000, 3.0, 7)
    assert a.hash() == b.hash()
    assert a.arcs() == b.arcs()
    assert abs(a.arc_count - 6000) < 5 * math.sqrt(6000)


def test_degree_classes_and_filter():
    d = longcycle.Digraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)])
    y, z = longcycle.degree_classes(d, 3)
    assert y == [] and z == [0, 1, 2]
    layers = longcycle.filter_layers(3, [(0, 1), (1, 2)], [0, 2])
    assert [sorted(l) for l in layers] == [[0, 1, 2]]


def test_matching():
    assert longcycle.maximum_matching_size(2, 1, [(0, 0), (1, 0)]) == 1
    assert longcycle.maximum_matching_size(3, 3, [(0, 1), (1, 2), (2, 0)]) == 3


def test_resolve_params_modes():
    paper = longcycle.resolve_params({"n": 100000, "c": 10, "mode": "paper"})
    desk = longcycle.resolve_params({"n": 100000, "c": 10, "mode": "desk"})
    assert paper["anchor_len"] * 2 > paper["path_size"]
    assert desk["path_size"] == 10 and desk["anchor_len"] == 2
    with pytest.raises(longcycle.LongcycleError):
        longcycle.resolve_params({"n": 1, "c": 1})


def test_run_trial_reconciles_and_is_deterministic():
    cfg = {"n": 5000, "c": 6, "path_reach": 1, "gamma": 30, "path_size": 20, "anchor_len": 5, "timings": False}
    a = longcycle.run_trial(cfg, 3)
    assert a == longcycle.run_trial(cfg, 3)
    assert a["reconciles"]
    assert a["flags"]["certificate_valid"]
    counts = a["counts"]
    assert counts["uncovered"] == a["n"] - counts["final_length"]


def test_run_experiment_json_schema():
    out = longcycle.run_experiment({"n": 1500, "c": 4, "seeds": [1, 2, 3], "analysis": True})
    schema = json.loads((ROOT / "docs" / "record.schema.json").read_text())
    for rec in out["records"]:
        jsonschema.validate(rec, schema)
    assert [r["seed"] for r in out["records"]] == [1, 2, 3]
    assert out["summary"][0]["trials"] == 3


def test_validate_emitted_files(tmp_path):
    cli = ROOT / "build" / "longcycle_cli"
    if not cli.exists():
        pytest.skip("CLI not built")
    subprocess.run([str(cli), "run", "--n", "5000", "--c", "6", "--seeds", "1", "--path-reach", "1",
                    "--gamma", "30", "--path-size", "20", "--anchor-len", "5", "--emit-cycle", str(tmp_path)],
                   check=True, capture_output=True)
    stem = "n5000_c6_s1.txt"
    ok, reason = longcycle.validate_files(str(tmp_path / f"graph_{stem}"), str(tmp_path / f"sprinkle_{stem}"),
                                          str(tmp_path / f"cycle_{stem}"))
    assert ok and reason == "ok"
