"""
Acceptance gate: the fifteen headline checks, one test per criterion.

Each test runs the corresponding scenario at its registered trial count
and tolerance with a fixed master seed, prints one pass/fail line, and
asserts every trial passed (including sign constancy for the signed
ratio checks).
"""
import numpy as np

from charvol.verify import SCENARIOS, run_scenario

MASTER_SEED = 0


def run_and_report(criterion, name, require_sign=False):
    scenario = SCENARIOS[name]
    report, _ = run_scenario(name, master_seed=MASTER_SEED)
    summary = report["summary"]
    worst = max(r["residual"] for r in report["records"])
    flag = "PASS" if summary["all_pass"] else "FAIL"
    sign = ""
    if require_sign:
        sign = (f", sign={summary['sign']:+d}" if summary["sign_constant"]
                else ", sign=UNSTABLE")
    print(f"criterion {criterion:02d} {name}: {flag} "
          f"({summary['passed']}/{summary['trials']} trials{sign}, "
          f"max residual {worst:.2e}, tol {scenario.tolerance:g})")
    assert summary["all_pass"], f"criterion {criterion}: {name} failed"
    if require_sign:
        assert summary["sign_constant"]
        assert summary["sign"] in (1, -1)
    return report


def test_criterion_01_volume_f2_sl2():
    report = run_and_report(1, "volume-f2-sl2", require_sign=True)
    assert report["summary"]["trials"] >= 50
    assert report["summary"]["tolerance"] <= 1e-7


def test_criterion_02_volume_f3_sl2():
    report = run_and_report(2, "volume-f3-sl2", require_sign=True)
    assert report["summary"]["tolerance"] <= 1e-7
    for record in report["records"]:
        assert record["margins"]["f3_chart"] >= 0.1


def test_criterion_03_volume_f4_sl2():
    report = run_and_report(3, "volume-f4-sl2", require_sign=True)
    assert report["summary"]["tolerance"] <= 1e-7


def test_criterion_04_volume_f2_sl3():
    report = run_and_report(4, "volume-f2-sl3", require_sign=True)
    assert report["summary"]["tolerance"] <= 1e-6


def test_criterion_05_volume_f3_sl3():
    report = run_and_report(5, "volume-f3-sl3", require_sign=True)
    assert report["summary"]["tolerance"] <= 1e-6
    for record in report["records"]:
        for key in ("sl3_comm_12", "sl3_comm_13", "sl3_delta_23"):
            assert record["margins"][key] >= 0.1


def test_criterion_06_nu_consistency():
    report = run_and_report(6, "nu-consistency")
    # 100 trials x three group sizes = 300 regular elements
    assert report["summary"]["trials"] >= 100
    assert report["summary"]["tolerance"] <= 1e-8


def test_criterion_07_witten_factorization():
    for name in ("witten-s11-sl2", "witten-s04-sl2"):
        report = run_and_report(7, name, require_sign=True)
        assert report["summary"]["tolerance"] <= 1e-6


def test_criterion_08_goldman_identities():
    report = run_and_report(8, "goldman-identities")
    assert report["summary"]["trials"] >= 100
    assert report["summary"]["tolerance"] <= 1e-8


def test_criterion_09_bending():
    report = run_and_report(9, "bending")
    assert report["summary"]["tolerance"] <= 1e-8


def test_criterion_10_trace_identities():
    report = run_and_report(10, "trace-identities")
    assert report["summary"]["trials"] >= 100
    assert report["summary"]["tolerance"] <= 1e-8


def test_criterion_11_su_nu():
    report = run_and_report(11, "su-nu")
    assert report["summary"]["tolerance"] <= 1e-6


def test_criterion_12_dimensions():
    report = run_and_report(12, "dimensions")
    # integer counts, so any nonzero residual is a failure
    assert all(r["residual"] == 0.0 for r in report["records"])


def test_criterion_13_regularity_lemmas():
    report = run_and_report(13, "regularity-lemmas")
    assert report["summary"]["trials"] >= 200
    # zero counterexamples to the margin => regular + good implication
    assert all(r["ratio"] == [1.0, 0.0] for r in report["records"])


def test_criterion_14_derivative_oracle():
    report = run_and_report(14, "derivative-oracle")
    assert report["summary"]["trials"] >= 100
    assert report["summary"]["tolerance"] <= 1e-5


def test_criterion_15_vandermonde_newton():
    report = run_and_report(15, "vandermonde-newton")
    assert report["summary"]["tolerance"] <= 1e-8
    worst = max(r["residual"] for r in report["records"])
    assert worst < 1e-8 and np.isfinite(worst)
