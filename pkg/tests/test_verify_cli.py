import json
import subprocess
import sys

import pytest

from qparity import verify
from qparity.cli import main as cli_main


def run_cli(*argv):
    proc = subprocess.run(
        [sys.executable, "-m", "qparity.cli", *argv],
        capture_output=True,
        text=True,
    )
    return proc.returncode, proc.stdout, proc.stderr


def test_verify_identity_report_schema():
    rep = verify.verify_identity("main", {"k": 2, "j": 1, "r": 1}, 20,
                                 ("sum", "product", "set-Z"))
    assert rep.passed and rep.first_mismatch is None
    d = rep.to_json_dict()
    assert d["subject"] == "main" and d["status"] == "pass"
    assert d["order"] == 20 and "elapsedMs" in d
    assert "firstMismatch" not in d


def test_verify_identity_reports_minimal_mismatch():
    # compare two genuinely different identities' sides through the evaluator
    rep = verify.verify_identity("rr", {"a": 0}, 12, ("sum", "product"))
    assert rep.passed
    # a deliberately perturbed comparison must locate the smallest exponent
    from qparity import catalog

    good = catalog.sum_side("rr", {"a": 0}, 12)
    bad = catalog.product_side("rr", {"a": 1}, 12)
    lo = next(e for e in range(13) if good.coefficient(e) != bad.coefficient(e))
    assert lo == 1  # ascending scan pins the smallest mismatching exponent


def test_report_pass_iff_no_mismatch():
    rep = verify.Report(subject="t", params={})
    assert rep.passed
    rep.fail(exponent=3, left=1, right=2)
    assert not rep.passed and rep.first_mismatch["exponent"] == 3
    rep.fail(exponent=5, left=0, right=9)  # later failures do not overwrite
    assert rep.first_mismatch["exponent"] == 3


def test_bijection_suite_passes_and_is_deterministic():
    a = verify.bijection_suite(1, 0, 2, 0, 10)
    b = verify.bijection_suite(1, 0, 2, 0, 10)
    assert a.passed and b.passed
    assert a.to_json_dict(False) == b.to_json_dict(False)
    assert verify.bijection_suite(0, 1, 1, -1, 8).passed
    assert verify.bijection_suite(1, 1, 2, 1, 8).passed


def test_bijection_suite_weight_zero():
    assert verify.parity_suite(2, 0, 0).passed
    assert verify.bijection_suite(1, 0, 2, 0, 0).passed


def test_parity_and_motion_suites():
    assert verify.parity_suite(2, 0, 10).passed
    assert verify.parity_suite(2, 1, 10).passed
    rep = verify.explicit_motion_suite(span=6, max_entry=3, max_h=3, max_m=8)
    assert rep.passed and rep.detail["instances"] > 500


def test_ring_check_deterministic():
    a = verify.ring_check(seed=7, order=12, trials=25)
    b = verify.ring_check(seed=7, order=12, trials=25)
    assert a.passed
    assert a.to_json_dict(False) == b.to_json_dict(False)


def test_mutation_sensitivity():
    reports = verify.mutation_reports(order=22, max_weight=10)
    assert len(reports) == 3
    for rep in reports:
        assert rep.passed, rep.subject  # pass means the defect was caught


def test_sweep_aggregates_and_sorts():
    reports = verify.sweep(ids=["rr"], k_max=1, order=15)
    assert reports[0].subject == "qseries-ring-laws"
    rest = reports[1:]
    assert [r.params for r in rest] == [{"a": 0}, {"a": 1}]
    assert all(r.passed for r in reports)


def test_sweep_parallel_matches_serial():
    serial = verify.sweep(ids=["ag"], k_max=2, order=12, jobs=1)
    parallel = verify.sweep(ids=["ag"], k_max=2, order=12, jobs=2)
    assert [r.to_json_dict(False) for r in serial] == [
        r.to_json_dict(False) for r in parallel
    ]


# -- CLI ------------------------------------------------------------------


def test_cli_verify_json_exit_codes():
    code, out, err = run_cli(
        "verify", "--id", "main", "--k", "3", "--j", "1", "--r", "1",
        "--order", "25", "--format", "json",
    )
    assert code == 0 and err == ""
    doc = json.loads(out)
    assert doc["status"] == "pass" and doc["params"] == {"k": 3, "j": 1, "r": 1}
    assert doc["elapsedMs"] == 0  # byte-identical default


def test_cli_parameter_error_is_exit_2():
    code, out, err = run_cli(
        "verify", "--id", "main", "--k", "3", "--j", "5", "--r", "1"
    )
    assert code == 2
    assert "constraint" in err and out == ""
    code, _, err = run_cli("verify", "--id", "bogus", "--k", "1")
    assert code == 2 and "unknown identity" in err
    code, _, err = run_cli("series", "--id", "rr", "--side", "set-Z", "--a", "0")
    assert code == 2 and "no side" in err


def test_cli_byte_identical_runs():
    args = ("sweep", "--id", "rr", "--order", "12", "--format", "json",
            "--seed", "3")
    a = run_cli(*args)
    b = run_cli(*args)
    assert a == b and a[0] == 0


def test_cli_series_csv():
    code, out, _ = run_cli(
        "series", "--id", "rr", "--a", "0", "--order", "6", "--format", "csv"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "exponent,coefficient"
    assert lines[1] == "0,1"
    assert len(lines) == 8


def test_cli_enumerate_text_and_json():
    code, out, _ = run_cli(
        "enumerate", "--family", "Zo", "--j", "1", "--r", "0", "--k", "2",
        "--max-weight", "4",
    )
    assert code == 0 and out.splitlines()[0] == "0: []"
    code, out, _ = run_cli(
        "enumerate", "--family", "Zo", "--j", "1", "--r", "0", "--k", "2",
        "--max-weight", "4", "--format", "json",
    )
    rows = json.loads(out)
    assert {"weight": 2, "entries": [[1, 2]]} in rows


def test_cli_trace_figure_example():
    code, out, _ = run_cli("trace", "--example", "figure1")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 10  # initial state plus nine process steps
    assert lines[-1].startswith("⇒")
    assert "[1^2, 2^1, 3^3, 4^1, 5^1, 6^3]" in lines[-1]


def test_cli_trace_tuple():
    code, out, _ = run_cli("trace", "--bla", "[[2],[0]]", "--u", "0")
    assert code == 0 and out.startswith("frame")


def test_cli_list_json():
    code, out, _ = run_cli("list", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 20 and all("constraint" in r for r in rows)


def test_cli_bijection_and_motion_subcommands():
    code, out, _ = run_cli(
        "bijection", "--j", "1", "--r", "0", "--k", "2", "--u", "0",
        "--max-weight", "8", "--format", "json",
    )
    assert code == 0 and json.loads(out)["status"] == "pass"
    code, out, _ = run_cli(
        "motion-check", "--span", "5", "--max-entry", "2", "--max-h", "2",
        "--max-m", "5", "--format", "json",
    )
    assert code == 0 and json.loads(out)["status"] == "pass"
    code, out, _ = run_cli(
        "parity", "--k", "2", "--u", "1", "--max-weight", "8", "--format", "json"
    )
    assert code == 0 and json.loads(out)["status"] == "pass"


def test_cli_main_inprocess_usage_error():
    assert cli_main(["verify", "--id", "rr"]) == 2  # missing --a
