import csv
import json
import subprocess
import sys

import pytest

from sostree import cli, k2, verify


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def error_line(err):
    lines = err.strip().splitlines()
    assert len(lines) == 1
    assert lines[0].startswith("error: ")
    return lines[0].split(": ", 2)[1]


# -- classify ---------------------------------------------------------------------

def test_classify_unique(capsys):
    code, out, _ = run(capsys, "classify", "--theta", "0.9", "--lambda", "2")
    assert code == 0
    assert "case 6, 1 TISGM(s)" in out


def test_classify_seven(capsys):
    code, out, _ = run(capsys, "classify", "--theta", "0.2", "--lambda", "0.75", "--oracle")
    assert code == 0
    assert "7 TISGM(s)" in out
    assert "oracle count 7 (agrees)" in out
    assert out.count(" z0=") == 7


def test_classify_json_records(capsys):
    code, out, _ = run(capsys, "classify", "--theta", "0.2", "--lambda", "0.75", "--json")
    assert code == 0
    recs = [json.loads(line) for line in out.splitlines()]
    assert recs[0]["record"] == "summary"
    assert recs[0]["count"] == 7 and recs[0]["case"] == "1(a)"
    assert recs[0]["boundary_flag"] is False
    sols = recs[1:]
    assert len(sols) == 7
    for r in sols:
        assert {"x", "y", "z0", "z1", "branch", "multiplicity", "residuals"} <= set(r)
        assert max(abs(v) for v in r["residuals"]) < 1e-10


def test_classify_general_k(capsys):
    code, out, _ = run(capsys, "classify", "--theta", "0.1", "--lambda", "1", "--k", "3", "--json")
    assert code == 0
    recs = [json.loads(line) for line in out.splitlines()]
    assert recs[0]["count_lower_bound"] == 3
    assert len(recs) == 4


@pytest.mark.parametrize("argv,code", [
    (["classify", "--theta", "0.2", "--lambda", "-1"], "bad-lambda"),
    (["classify", "--theta", "0", "--lambda", "1"], "bad-theta"),
    (["classify", "--lambda", "1"], "missing-argument"),
    (["classify", "--theta", "0.2", "--lambda", "1", "--m", "3"], "bad-m"),
    (["classify", "--theta", "0.2", "--lambda", "1", "--k", "1"], "bad-k"),
    (["classify", "--theta", "abc", "--lambda", "1"], "usage"),
    (["frobnicate"], "usage"),
    ([], "usage"),
    (["sweep", "--grid", "0.5:0.1:3,0.1:1:3"], "bad-grid"),
    (["sweep", "--grid", "0.1:0.5:1,0.1:1:3"], "bad-grid"),
    (["sweep", "--grid", "0.1:0.5"], "bad-grid"),
    (["curves", "--theta", "0.2", "--k", "3"], "bad-k"),
    (["verify", "--level", "huge"], "bad-level"),
    (["classify", "--config", "/nonexistent/conf"], "config-unreadable"),
])
def test_error_paths(capsys, argv, code):
    status, _, err = run(capsys, *argv)
    assert status == 2
    assert error_line(err) == code


def test_unwritable_output(capsys, tmp_path):
    target = tmp_path / "missing" / "sweep.csv"
    status, _, err = run(capsys, "sweep", "--grid", "0.1:0.5:3,0.1:1:3", "--out", str(target))
    assert status == 2
    assert error_line(err) == "unwritable-output"
    status, _, err = run(capsys, "curves", "--theta", "0.2", "--out", str(target))
    assert error_line(err) == "unwritable-output"


# -- curves -----------------------------------------------------------------------

def test_curves_at_theta3(capsys):
    code, out, _ = run(capsys, "curves", "--theta", repr(k2.THETA3))
    assert code == 0
    header, row = list(csv.reader(out.splitlines()))
    assert header == ["theta", "lambda1", "lambda2", "lambda3", "lambda4"]
    assert row[1] == row[2] == ""
    assert abs(float(row[3]) - float(row[4])) < 1e-12


def test_curves_grid_and_general(capsys):
    code, out, _ = run(capsys, "curves", "--grid", "0.1:0.3:3")
    rows = list(csv.reader(out.splitlines()))
    assert len(rows) == 4
    assert rows[3][1] == ""
    code, out, _ = run(capsys, "curves", "--grid", "0.1:0.3:3", "--general", "--k", "2")
    rows = list(csv.reader(out.splitlines()))
    assert rows[0] == ["theta", "lambda_star1", "lambda_star2", "theta_c"]
    assert float(rows[1][1]) == pytest.approx(k2.lambda_curves(0.1).lambda1, rel=1e-10)


# -- sweep ------------------------------------------------------------------------

def test_sweep_is_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        assert run(capsys, "sweep", "--grid", "0.05:0.6:12,0.1:1.5:12", "--out", str(p))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert (tmp_path / "a_curves.csv").read_bytes() == (tmp_path / "b_curves.csv").read_bytes()
    rows = list(csv.reader(a.read_text().splitlines()))
    assert rows[0] == ["theta", "lambda", "case", "count", "boundary_flag"]
    assert len(rows) == 1 + 144
    # theta-major ordering
    thetas = [float(r[0]) for r in rows[1:]]
    assert thetas == sorted(thetas)
    assert [float(r[1]) for r in rows[1:13]] == sorted(float(r[1]) for r in rows[1:13])
    curves = list(csv.reader((tmp_path / "a_curves.csv").read_text().splitlines()))
    assert curves[0] == ["theta", "lambda1", "lambda2", "lambda3", "lambda4"]
    assert len(curves) == 13


def test_sweep_counts_respect_case_lists(capsys, tmp_path):
    out = tmp_path / "s.csv"
    assert run(capsys, "sweep", "--grid", "0.05:0.6:50,0.1:1.5:50", "--out", str(out))[0] == 0
    rows = list(csv.reader(out.read_text().splitlines()))[1:]
    ok, detail = verify.check_sweep_slices(rows)
    assert ok, detail
    assert {1, 3, 5, 7} <= {int(r[3]) for r in rows}


def test_single_row_sweep_is_all_ones(capsys):
    code, out, _ = run(capsys, "sweep", "--theta", "0.9", "--grid", "0.1:3:25")
    assert code == 0
    rows = list(csv.reader(out.splitlines()))[1:]
    assert len(rows) == 25
    assert {r[3] for r in rows} == {"1"}
    assert {r[2] for r in rows} == {"6"}


def test_sweep_general_k(capsys):
    code, out, _ = run(capsys, "sweep", "--grid", "0.05:1.5:4,0.5:2:4", "--k", "3")
    assert code == 0
    rows = list(csv.reader(out.splitlines()))[1:]
    assert {r[2] for r in rows} == {"lower-bound"}
    assert {int(r[3]) for r in rows} <= {1, 2, 3}


def test_sweep_job_invariants():
    r = cli.Range(0.1, 0.5, 3)
    with pytest.raises(cli.CliError):
        cli.SweepJob(r, r, k=1)
    with pytest.raises(cli.CliError):
        cli.SweepJob(r, r, mode="plot")
    with pytest.raises(cli.CliError):
        cli.SweepJob(r, cli.Range(0.1, 0.1, 1))
    job = cli.SweepJob(cli.Range(0.9, 0.9, 1), r)
    assert job.theta_range.values() == [0.9]


# -- config -----------------------------------------------------------------------

def test_config_file_and_flag_precedence(capsys, tmp_path):
    conf = tmp_path / "job.conf"
    conf.write_text("# a comment\ntheta = 0.2\nlambda = 0.75\njson = true\n")
    code, out, _ = run(capsys, "classify", "--config", str(conf))
    assert code == 0
    assert json.loads(out.splitlines()[0])["count"] == 7
    code, out, _ = run(capsys, "classify", "--config", str(conf), "--theta", "0.9")
    assert json.loads(out.splitlines()[0])["count"] == 1


def test_config_rejects_unknown_key(capsys, tmp_path):
    conf = tmp_path / "bad.conf"
    conf.write_text("colour = blue\n")
    status, _, err = run(capsys, "classify", "--config", str(conf))
    assert status == 2 and error_line(err) == "bad-config"


# -- solve and verify ------------------------------------------------------------

def test_solve_reports_ab_form(capsys):
    code, out, _ = run(capsys, "solve", "--theta", "0.2", "--lambda", "1", "--json", "--oracle")
    assert code == 0
    summary = json.loads(out.splitlines()[0])
    assert summary["a"] == pytest.approx(0.016) and summary["b"] == pytest.approx(13.0)
    assert summary["count"] == summary["predicted_count"] == 1


def test_verify_quick_passes(capsys):
    code, out, _ = run(capsys, "verify", "--level", "quick")
    assert code == 0
    assert out.count("[PASS]") == len(out.splitlines())


def test_verify_catches_flipped_lambda4(capsys, monkeypatch):
    real = k2._lambda4
    monkeypatch.setattr(k2, "_lambda4", lambda t: -real(t))
    ok, detail = verify.check_oracle_grid(30, 30)
    assert not ok
    assert "0 mismatches" not in detail
    code, out, err = run(capsys, "verify", "--level", "quick")
    assert code == 1
    assert "[FAIL] classifier-vs-oracle" in out
    assert error_line(err) == "verify-failed"


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "sostree", "classify", "--theta", "0.1", "--lambda", "1"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert "7 TISGM(s)" in out.stdout
    bad = subprocess.run([sys.executable, "-m", "sostree", "classify", "--theta", "0.2", "--lambda", "-1"],
                         capture_output=True, text=True)
    assert bad.returncode != 0
    assert bad.stderr.startswith("error: bad-lambda:")
