"""Experiment harness: presets, persistence, determinism, certificates,
and the command-line interface."""

import json

import pytest

from ptflab import ExperimentSpec, make_shape, preset, replay_certificate, run
from ptflab.cli import main as cli_main
from ptflab.harness import rows_without_timing


def test_preset_lookup():
    spec = preset("weak-2-3")
    assert [s.ks for s in spec.shapes] == [(2, 3)]
    assert set(spec.modes) == {
        "verify-gate",
        "signdeg",
        "minweight-lp",
        "minweight-exact",
        "lemmas",
        "theorem",
    }
    spec = preset("strong-3-3")
    assert spec.modes == ("verify-gate", "signdeg")
    with pytest.raises(KeyError):
        preset("nope")


def test_spec_json_round_trip():
    spec = preset("weak-2-3")
    back = ExperimentSpec.from_json(json.loads(json.dumps(spec.to_json())))
    assert back.name == spec.name
    assert [s.ks for s in back.shapes] == [s.ks for s in spec.shapes]
    assert back.modes == tuple(spec.modes)


def test_empty_shape_list_is_trivially_green(tmp_path):
    spec = ExperimentSpec("empty", [], modes=("verify-gate",))
    rows, status = run(spec, tmp_path)
    assert rows == []
    assert status == 0
    assert (tmp_path / "empty.csv").exists()


def test_gt_lemma_preset_certifies(tmp_path):
    spec = preset("gt-lemmas-k6")
    rows, status = run(spec, tmp_path)
    assert status == 0
    lemma_rows = [r for r in rows if r.metric.startswith("lemma_")]
    assert len(lemma_rows) == 10  # gt_exp and gt_step for k = 2..6
    assert all(r.value == "CERTIFIED" for r in lemma_rows)
    certs = list((tmp_path / "certs").glob("*.json"))
    assert certs


def test_k5_preset_rows(tmp_path):
    rows, status = run(preset("k5-optimal"), tmp_path)
    assert status == 0
    by_metric = {(r.shape, r.metric): r.value for r in rows}
    assert by_metric[("k=3", "bound_exponent")] == str(2**35)
    assert by_metric[("k=5", "bound_exponent")] == str(4**21)
    assert by_metric[("k=7", "bound_exponent")] == str(6**15)
    assert by_metric[("n=105", "k5_is_max")] == "PASS"


def test_workers_and_seed_do_not_change_results(tmp_path):
    spec = ExperimentSpec(
        "two-shapes",
        [make_shape("weak", (2, 2)), make_shape("weak", (2, 3))],
        modes=("verify-gate", "theorem"),
    )
    run(spec, tmp_path / "a")
    run(spec, tmp_path / "b", workers=2, seed=7)
    a = rows_without_timing((tmp_path / "a" / "two-shapes.csv").read_text())
    b = rows_without_timing((tmp_path / "b" / "two-shapes.csv").read_text())
    assert a == b


def test_certificates_replay_and_detect_corruption(tmp_path):
    spec = preset("strong-3-3")
    run(spec, tmp_path)
    certs = sorted((tmp_path / "certs").glob("*.json"))
    assert certs
    for path in certs:
        assert replay_certificate(path)
    blob = json.loads(certs[0].read_text())
    if blob["kind"] in ("farkas", "witness", "l1-bound"):
        blob["vector"][0] = "9999"
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(blob))
        assert not replay_certificate(bad)


def test_budget_marks_skipped_not_fail(tmp_path):
    spec = ExperimentSpec(
        "tight",
        [make_shape("weak", (2, 3))],
        modes=("minweight-exact",),
        node_budget=0,
    )
    rows, status = run(spec, tmp_path)
    values = {r.metric: r.value for r in rows}
    assert values["minweight_exact"] == "SKIPPED"
    assert status == 0


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------


def test_cli_order_snake(capsys):
    assert cli_main(["order", "weak", "2,2"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "rank,a1,a2"
    assert out[1:] == ["1,1,1", "2,1,2", "3,2,2", "4,2,1"]


def test_cli_build_signdeg_minweight_round_trip(tmp_path, capsys):
    fn_path = tmp_path / "gt2.json"
    assert cli_main(["build", "weak", "2", "--out", str(fn_path)]) == 0
    assert cli_main(["signdeg", str(fn_path), "--dmax", "2"]) == 0
    out = capsys.readouterr().out
    assert "sign degree = 1" in out
    gate_path = tmp_path / "gate.json"
    assert cli_main(
        ["minweight", str(fn_path), "--degree", "1", "--exact", "--out", str(gate_path)]
    ) == 0
    out = capsys.readouterr().out
    assert "6" in out
    payload = json.loads(gate_path.read_text())
    assert payload["weight"] == "6"


def test_cli_verify_gate(capsys):
    assert cli_main(["verify-gate", "2,3"]) == 0
    assert "PASS" in capsys.readouterr().out
    assert cli_main(["verify-gate", "3,3", "--variant", "strong"]) == 0


def test_cli_check_lemma(capsys):
    assert cli_main(["check-lemma", "gt_step", "--k", "3"]) == 0
    assert "CERTIFIED" in capsys.readouterr().out


def test_cli_reproduce(tmp_path, capsys):
    assert cli_main(["reproduce", "strong-3-3", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "strong-3-3.csv").exists()
    out = capsys.readouterr().out
    assert "verify_gate,PASS" in out.replace(" ", "")
