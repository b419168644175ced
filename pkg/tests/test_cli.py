import csv
import io
import json
import math
import os
import subprocess
import sys

import pytest

from rellich_lab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def table(doc):
    return {row["name"]: row for row in doc["results"]["table"]}


# --- constants ---------------------------------------------------------------

def test_constants_n3(capsys):
    code, doc = run_json(capsys, "constants", "--n", "3", "--gamma", "0")
    assert code == 0
    t = table(doc)
    assert t["hardy"]["value"] == pytest.approx(0.25, abs=1e-15)
    assert t["rellich"]["value"] == pytest.approx(0.5625, abs=1e-15)
    assert t["hardy-rellich"]["value"] == pytest.approx(25 / 36, abs=1e-15)
    assert t["hardy-rellich"]["argmin"] == 1
    assert set(doc) == {"command", "inputs", "results", "versions", "seed"}


def test_constants_vanishing_rellich(capsys):
    _, doc = run_json(capsys, "constants", "--n", "2", "--gamma", "2")
    assert table(doc)["rellich"]["value"] == 0


def test_constants_single_mode_alpha(capsys):
    _, doc = run_json(capsys, "constants", "--n", "5", "--gamma", "0", "--which", "alpha:1")
    assert table(doc)["alpha:1"]["value"] == pytest.approx(441 / 68, rel=1e-15)


@pytest.mark.parametrize("argv", [
    ("constants", "--n", "3", "--gamma", "0", "--which", "bogus"),
    ("constants", "--n", "1", "--gamma", "0"),
])
def test_constants_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["constants", "--gamma", "0"])
    assert exc.value.code == 2


# --- verify ------------------------------------------------------------------

def test_verify_rellich_holds(capsys):
    code, doc = run_json(capsys, "verify", "--ineq", "3.44", "--n", "5", "--gamma", "0",
                         "--profile", "bump:1,3", "--mode", "0")
    assert code == 0 and doc["results"]["holds"] and doc["results"]["margin"] > 0


def test_verify_schmincke_endpoint(capsys):
    code, _ = run_json(capsys, "verify", "--ineq", "3.89", "--n", "3", "--gamma", "0", "--s", "-0.5",
                       "--profile", "bump:1,3", "--mode", "1")
    assert code == 0


def test_verify_records_cauchy_flag(capsys):
    code, doc = run_json(capsys, "verify", "--ineq", "2.2", "--n", "5", "--gamma", "0", "--alpha", "1",
                         "--beta", "0", "--profile", "bump:1,3", "--mode", "0")
    assert code == 0 and doc["results"]["preconditions_met"] is False


def test_verify_violation_exits_1(capsys):
    code, doc = run_json(capsys, "verify", "--ineq", "3.115", "--n", "3", "--gamma", "0", "--s", "-1000",
                         "--profile", "bump:1,3", "--mode", "1")
    assert code == 1 and doc["results"]["margin"] < 0 and not doc["results"]["preconditions_met"]


def test_verify_two_modes_and_seeded_profile(capsys):
    code, doc = run_json(capsys, "verify", "--ineq", "3.69a", "--n", "4", "--gamma", "1",
                         "--profile", "bump:1,3", "--mode", "0,2", "--profile2", "poly:7,3,0.5,4")
    assert code == 0 and doc["seed"] == 7


@pytest.mark.parametrize("profile", ["bump:1", "bump:3,1", "poly:1,2,3", "wave:1,2", "bump:a,b"])
def test_verify_malformed_profiles(capsys, profile):
    code, _, err = run(capsys, "verify", "--ineq", "3.44", "--n", "5", "--gamma", "0",
                       "--profile", profile, "--mode", "0")
    assert code == 2 and err


def test_verify_missing_family_parameter(capsys):
    code, _, _ = run(capsys, "verify", "--ineq", "2.1", "--n", "5", "--gamma", "0", "--alpha", "1",
                     "--profile", "bump:1,3", "--mode", "0")
    assert code == 2


# --- sharpness ---------------------------------------------------------------

def test_sharpness_excluded_pair_exits_3(capsys):
    code, out, err = run(capsys, "sharpness", "--n", "3", "--gamma", "1", "--j0", "0", "--target", "A")
    assert code == 3 and out == "" and "exclu" in err.lower()


def test_sharpness_vanishing_limit_uses_absolute_gap(capsys):
    code, doc = run_json(capsys, "sharpness", "--n", "2", "--gamma", "2", "--j0", "0", "--target", "C",
                         "--eps-steps", "3")
    res = doc["results"]
    assert code == 0 and res["limit"] == 0 and res["gap_kind"] == "absolute"
    assert [row["epsilon"] for row in res["table"]] == [0.5, 0.25, 0.125]
    assert res["final_gap"] == res["table"][-1]["rellich_q"]


def test_sharpness_table_is_decreasing(capsys):
    _, doc = run_json(capsys, "sharpness", "--n", "5", "--gamma", "0", "--j0", "0", "--eps-steps", "4")
    rows = doc["results"]["table"]
    assert doc["results"]["decreasing"]
    assert all(b["hardy_rellich_q"] < a["hardy_rellich_q"] for a, b in zip(rows, rows[1:]))


# --- oracle ------------------------------------------------------------------

def test_oracle_hardy_rellich_n5(capsys):
    code, doc = run_json(capsys, "oracle", "--n", "5", "--gamma", "0", "--j", "0", "--quotient", "hardy-rellich")
    assert code == 0
    assert doc["results"]["theoretical"] == 6.25 and abs(doc["results"]["gap"]) < 0.02


def test_oracle_bad_grid(capsys):
    code, _, _ = run(capsys, "oracle", "--n", "5", "--gamma", "0", "--j", "0", "--quotient", "rellich",
                     "--points", "10")
    assert code == 2


# --- schmincke ---------------------------------------------------------------

def test_schmincke_four_dimensions(capsys):
    _, doc = run_json(capsys, "schmincke", "--n", "4", "--gamma", "0", "--variant", "sec3")
    assert doc["results"]["s_min"] == -3 and doc["results"]["case"] == "ii"


def test_schmincke_constant_and_admissibility(capsys):
    _, doc = run_json(capsys, "schmincke", "--n", "5", "--gamma", "0", "--variant", "sec2", "--s", "0")
    assert doc["results"]["rhs_constant"] == pytest.approx(25 / 16) and doc["results"]["admissible"]


def test_schmincke_three_dimensions_reports_both_evaluations(capsys):
    _, doc = run_json(capsys, "schmincke", "--n", "3", "--gamma", "0", "--variant", "sec3", "--s", "-0.6")
    res = doc["results"]
    assert res["s_min"] == -0.5 and res["admissible"] is False
    assert res["k3"] == pytest.approx((4 * -0.6 + 25 / 9) / 16, rel=1e-14)


# --- logrefine ---------------------------------------------------------------

def test_logrefine_holds(capsys):
    code, doc = run_json(capsys, "logrefine", "--ineq", "3.48a", "--n", "4", "--gamma", "0", "--N", "1",
                         "--R", "1", "--eta", "auto", "--profile", "bump:0.2,0.8", "--mode", "0")
    assert code == 0 and doc["inputs"]["eta"] == 1.0


def test_logrefine_auto_scale(capsys):
    _, doc = run_json(capsys, "logrefine", "--ineq", "3.48a", "--n", "4", "--gamma", "0", "--N", "2",
                      "--eta", "auto", "--profile", "bump:0.2,0.8", "--mode", "0")
    assert doc["inputs"]["eta"] == pytest.approx(math.e, rel=1e-15)


@pytest.mark.parametrize("extra", [("--profile", "bump:0.2,1.5"), ("--profile", "bump:0.2,0.8", "--eta", "0.5")])
def test_logrefine_domain_errors(capsys, extra):
    code, out, _ = run(capsys, "logrefine", "--ineq", "4.31", "--n", "4", "--gamma", "0", "--N", "1",
                       "--mode", "0", *extra)
    assert code == 2 and out == ""


# --- output contract ---------------------------------------------------------

CSV_CASES = [
    ("constants", "--n", "7", "--gamma", "-1.5"),
    ("sharpness", "--n", "6", "--gamma", "-1", "--j0", "0", "--eps-steps", "3"),
    ("verify", "--ineq", "3.59a", "--n", "4", "--gamma", "0.5", "--profile", "poly:3,4,0.5,2.5", "--mode", "2"),
    ("oracle", "--n", "4", "--gamma", "2", "--j", "1", "--quotient", "rellich", "--points", "300"),
]


@pytest.mark.parametrize("argv", CSV_CASES)
def test_csv_agrees_with_json_to_full_precision(capsys, argv):
    _, doc = run_json(capsys, *argv)
    _, out, _ = run(capsys, *argv, "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    res = doc["results"]
    ref = res.get("table") or [{k: v for k, v in res.items() if not isinstance(v, (dict, list))}]
    assert len(rows) == len(ref)
    for got, want in zip(rows, ref):
        for k, v in want.items():
            if isinstance(v, float):
                assert float(got[k]) == v, k


@pytest.mark.parametrize("argv", CSV_CASES + [("schmincke", "--n", "3", "--gamma", "0", "--variant", "sec3")])
def test_repeated_runs_are_byte_identical(capsys, argv):
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


def test_separate_processes_are_byte_identical():
    argv = [sys.executable, "-m", "rellich_lab", "sharpness", "--n", "5", "--gamma", "0", "--j0", "0",
            "--eps-steps", "3"]
    outs = []
    for threads in ("1", "3"):
        env = dict(os.environ, RELLICH_LAB_THREADS=threads)
        outs.append(subprocess.run(argv, capture_output=True, check=True, env=env).stdout)
    assert outs[0] == outs[1]
