"""
Tests for the scenario runner, report format, JSON codecs, and CLI.
"""
import json
import os
import subprocess
import sys

import numpy as np
import pytest

from charvol.cli import main
from charvol.errors import SizeMismatch
from charvol.jsonio import (matrix_from_json, matrix_to_json,
                            representation_from_json,
                            representation_to_json, word_from_json,
                            word_to_json)
from charvol.repcoh import Representation, random_good_rep
from charvol.verify import (REPORT_SCHEMA, SCENARIOS, derive_seed,
                            report_json, run_scenario)

ALL_SCENARIOS = (
    "volume-f2-sl2", "volume-f3-sl2", "volume-f4-sl2", "volume-f2-sl3",
    "volume-f3-sl3", "witten-s11-sl2", "witten-s04-sl2", "witten-s03-sl2",
    "witten-s03-sl3", "nu-consistency", "goldman-identities", "bending",
    "trace-identities", "su-nu", "dimensions", "regularity-lemmas",
    "derivative-oracle", "vandermonde-newton",
)


def test_scenario_registry_complete():
    assert tuple(SCENARIOS) == ALL_SCENARIOS
    for scenario in SCENARIOS.values():
        assert scenario.kind in ("ratio-sign", "identity")
        assert scenario.default_trials > 0


def test_derive_seed_frozen():
    # sha256("master:trial"), first 8 bytes little-endian
    assert derive_seed(0, 0) == 13913987977269637804
    assert derive_seed(0, 1) == 6746404440217949167
    assert derive_seed(12345, 7) == 7444484916951604275


def test_report_schema_golden():
    report, _ = run_scenario("volume-f2-sl2", master_seed=2, trials=2)
    assert set(report) == {"schema", "scenario", "description", "records",
                           "summary"}
    assert report["schema"] == REPORT_SCHEMA
    assert len(report["records"]) == 2
    for i, record in enumerate(report["records"]):
        assert set(record) == {"scenario", "trial", "seed", "lhs", "rhs",
                               "ratio", "residual", "pass", "margins"}
        assert record["trial"] == i
        assert record["seed"] == derive_seed(2, i)
        assert len(record["lhs"]) == 2 and len(record["ratio"]) == 2
    summary = report["summary"]
    assert set(summary) == {"scenario", "kind", "master_seed", "trials",
                            "tolerance", "passed", "failed", "sign",
                            "sign_constant", "all_pass"}
    assert summary["sign"] in (1, -1)
    # identity scenarios drop the sign fields
    report2, _ = run_scenario("vandermonde-newton", master_seed=2, trials=2)
    assert set(report2["summary"]) == {"scenario", "kind", "master_seed",
                                       "trials", "tolerance", "passed",
                                       "failed", "all_pass"}


def test_report_determinism_bytes_and_threads():
    r1, _ = run_scenario("volume-f2-sl2", master_seed=9, trials=4)
    r2, _ = run_scenario("volume-f2-sl2", master_seed=9, trials=4)
    assert report_json(r1) == report_json(r2)
    r3, _ = run_scenario("volume-f2-sl2", master_seed=9, trials=4,
                         threads=3)
    assert report_json(r3) == report_json(r1)
    old = os.environ.get("CHARVOL_THREADS")
    os.environ["CHARVOL_THREADS"] = "2"
    try:
        r4, _ = run_scenario("volume-f2-sl2", master_seed=9, trials=4)
    finally:
        if old is None:
            del os.environ["CHARVOL_THREADS"]
        else:
            os.environ["CHARVOL_THREADS"] = old
    assert report_json(r4) == report_json(r1)
    r5, _ = run_scenario("volume-f2-sl2", master_seed=10, trials=4)
    assert report_json(r5) != report_json(r1)


def test_report_has_no_timing():
    report, _ = run_scenario("vandermonde-newton", master_seed=1, trials=2)
    text = report_json(report)
    assert "wall" not in text and "time" not in text


def test_run_scenario_unknown_name():
    with pytest.raises(SizeMismatch):
        run_scenario("not-a-scenario")


def test_tight_tolerance_fails():
    report, _ = run_scenario("witten-s11-sl2", master_seed=0, trials=2,
                             tolerance=1e-22)
    assert not report["summary"]["all_pass"]
    assert report["summary"]["failed"] == 2


def test_matrix_json_round_trip():
    rng = np.random.default_rng(80)
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    obj = matrix_to_json(a)
    assert obj["n"] == 3
    np.testing.assert_array_equal(matrix_from_json(obj), a)
    with pytest.raises(SizeMismatch):
        matrix_from_json({"n": 2, "entries": [[[1, 0]]]})


def test_representation_json_round_trip():
    rep = random_good_rep(2, 3, seed=81)
    obj = representation_to_json(rep)
    assert obj["n"] == 2 and obj["k"] == 3
    back = representation_from_json(obj)
    assert isinstance(back, Representation)
    for x, y in zip(rep.generators, back.generators):
        np.testing.assert_array_equal(x, y)
    text = json.dumps(obj)
    again = representation_from_json(json.loads(text))
    np.testing.assert_array_equal(again.generators[0], rep.generators[0])


def test_word_json_round_trip():
    assert word_from_json(word_to_json((1, -2, 1))) == (1, -2, 1)
    with pytest.raises(SizeMismatch):
        word_from_json({"letters": [0]})


def test_cli_list(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    for name in ALL_SCENARIOS:
        assert name in out
    assert "f2_sl2" in out and "s11_sl2" in out


def test_cli_verify_pass_and_fail(capsys):
    assert main(["verify", "--scenario", "volume-f2-sl2", "--trials", "3",
                 "--seed", "5"]) == 0
    out = capsys.readouterr().out
    assert "[PASS] volume-f2-sl2: 3/3" in out and "sign=+1" in out
    assert main(["verify", "--scenario", "volume-f2-sl2", "--trials", "2",
                 "--tol", "1e-30"]) == 1
    out = capsys.readouterr().out
    assert "[FAIL]" in out


def test_cli_verify_unknown_scenario(capsys):
    assert main(["verify", "--scenario", "bogus"]) == 2


def test_cli_verify_writes_report(tmp_path, capsys):
    out_file = tmp_path / "report.json"
    code = main(["verify", "--scenario", "vandermonde-newton", "--trials",
                 "2", "--out", str(out_file)])
    assert code == 0
    payload = json.loads(out_file.read_text())
    assert payload["schema"] == REPORT_SCHEMA
    assert payload["summary"]["all_pass"] is True


def test_cli_sample_and_eval(tmp_path, capsys):
    rep_file = tmp_path / "rep.json"
    assert main(["sample", "--group", "sl2", "--rank", "2", "--seed", "3",
                 "--out", str(rep_file)]) == 0
    capsys.readouterr()
    rep = representation_from_json(json.loads(rep_file.read_text()))
    assert rep.n == 2 and rep.k == 2
    assert main(["eval", "--form", "f2_sl2", "--rep", str(rep_file)]) == 0
    out = capsys.readouterr().out
    assert "prefactor" in out and "value" in out
    # mismatched form / representation size is a usage error
    assert main(["eval", "--form", "f2_sl3", "--rep", str(rep_file)]) == 2


def test_cli_sample_surface_and_symplectic_eval(tmp_path, capsys):
    rep_file = tmp_path / "s11.json"
    assert main(["sample", "--group", "sl2", "--surface", "s11", "--seed",
                 "4", "--out", str(rep_file)]) == 0
    capsys.readouterr()
    assert main(["eval", "--form", "s11_sl2", "--rep", str(rep_file)]) == 0
    out = capsys.readouterr().out
    assert "omega(e1,e2)" in out


def test_cli_sample_needs_rank_or_surface(capsys):
    assert main(["sample", "--group", "sl2", "--seed", "1"]) == 2
    assert main(["sample", "--group", "su2", "--rank", "2"]) == 2


def test_cli_missing_rep_file(tmp_path):
    missing = tmp_path / "missing.json"
    assert main(["eval", "--form", "f2_sl2", "--rep", str(missing)]) == 2


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "charvol.cli", "list"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "volume-f2-sl2" in proc.stdout
