import csv
import io
import json
import subprocess
import sys

import pytest

from disbessel import bessel
from disbessel.bessel import BesselSpec
from disbessel.cli import main, parse_range, run_captured


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_parse_range():
    assert parse_range("3") == [3]
    assert parse_range("-2..1") == [-2, -1, 0, 1]


def test_eval_examples(capsys):
    code, out = run_captured(["eval", "--kind", "J", "--direction", "forward", "-n", "0", "-c", "1", "--t", "2"])
    assert code == 0
    r = rows(out)
    assert list(r[0]) == ["n", "t", "c", "value", "method", "est_error"]
    assert float(r[0]["value"]) == 0.5 and r[0]["method"] == "polynomial"
    code, out = run_captured(["eval", "--kind", "I", "--direction", "backward", "-n", "0", "-c", "1.5", "--t", "3"])
    assert code == 2
    assert "backward I" in capsys.readouterr().err
    code, out = run_captured(["eval", "--kind", "J", "--direction", "backward", "-n", "1", "-c", "1", "--t=-2"])
    assert float(rows(out)[0]["value"]) == -1


def test_eval_json():
    code, out = run_captured(["eval", "--kind", "J", "--direction", "backward", "-n", "2", "-c", "0.5",
                              "--t=-3..3", "--format", "json"])
    obj = json.loads(out)
    assert obj["schema"] == "disbessel/1"
    assert [r["t"] for r in obj["rows"]] == list(range(-3, 4))


def test_csv_round_trip_is_bit_exact():
    code, out = run_captured(["eval", "--kind", "J", "--direction", "backward", "-n", "1", "-c", "0.37",
                              "--t=-10..40"])
    spec = BesselSpec("J", "backward", 1, 0.37)
    for r in rows(out):
        assert float(r["value"]) == bessel.evaluate(spec, int(r["t"]))


def test_deterministic_output():
    argv = ["laplace", "--kind", "J", "--direction", "backward", "-n", "0", "-c", "0.3", "--z", "0.9,1.1"]
    assert run_captured(argv) == run_captured(argv)


def test_wave_examples(tmp_path):
    code, out = run_captured(["wave", "--scheme", "forward", "-c", "0.5", "--radius", "8", "--horizon", "10"])
    cells = {(int(r["n"]), int(r["t"])): float(r["value"]) for r in rows(out)}
    assert cells[(0, 2)] == 0.5
    outfile = tmp_path / "grid.csv"
    code, out = run_captured(["wave", "--scheme", "backward", "-c", "0.5", "--radius", "64", "--horizon", "20",
                              "--init", "delta", "--out", str(outfile)])
    assert code == 0
    assert out.startswith("t,max_abs")
    cells = {(int(r["n"]), int(r["t"])): float(r["value"]) for r in rows(outfile.read_text())}
    assert cells[(0, 1)] == pytest.approx(0.7071067812, abs=1e-10)


def test_wave_zero_file(tmp_path):
    init = tmp_path / "init.txt"
    init.write_text("# n u0 v0\n-1 0 0\n0 0 0\n1 0 0\n")
    code, out = run_captured(["wave", "--scheme", "forward", "-c", "0.5", "--radius", "6", "--horizon", "8",
                              "--init", f"file={init}"])
    assert code == 0
    assert all(float(r["value"]) == 0 for r in rows(out))


def test_wave_window_too_small():
    code, _ = run_captured(["wave", "--scheme", "backward", "-c", "0.5", "--radius", "5", "--horizon", "20"])
    assert code == 2


def test_laplace_examples():
    code, out = run_captured(["laplace", "--kind", "J", "--direction", "forward", "-n", "0", "-c", "1", "--z", "2"])
    r = rows(out)[0]
    assert float(r["closed"]) == pytest.approx(0.4472135955, abs=1e-10)
    assert float(r["abs_diff"]) < 1e-10
    code, out = run_captured(["laplace", "--kind", "I", "--direction", "backward", "-n", "0", "-c", "0.5",
                              "--z", "0.9", "0.0"])
    r = rows(out)
    assert abs(float(r[0]["discrepancy"])) < 1e-10
    assert float(r[0]["abs_diff"]) == pytest.approx(10)
    assert r[1]["in_region"] == "false"


def test_asymp_examples():
    code, out = run_captured(["asymp", "--kind", "I", "--direction", "forward", "-n", "0", "-c", "1",
                              "--t-max", "1000"])
    r = rows(out)
    assert r[0]["t"] == "1"
    assert abs(float(r[-1]["ratio"]) - 1) < abs(float(r[99]["ratio"]) - 1) < abs(float(r[9]["ratio"]) - 1)
    code, out = run_captured(["asymp", "--mode", "n", "--kind", "J", "--direction", "backward", "-c", "1",
                              "--t-max", "3"])
    r = rows(out)
    assert {row["t"] for row in r} == {"1", "2", "3"}
    assert float(r[0]["ratio"]) == pytest.approx(1, rel=1e-12)


def test_verify_suite_wave():
    code, out = run_captured(["verify", "--suite", "wave"])
    obj = json.loads(out)
    assert code == 0
    assert obj["suite"] == "wave" and obj["checks_run"] > 0 and obj["failures"] == []


def test_verify_laplace_includes_discrepancy_law(monkeypatch):
    from disbessel import verify
    rep = verify.suite_laplace(points=3)
    assert rep.failures == []
    assert rep.checks_run > 0


def test_verify_bad_suite():
    assert run_captured(["verify", "--suite", "nope"])[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "disbessel", "eval", "--kind", "I", "--direction", "forward",
                           "-n", "0", "-c", "0.5", "--t", "2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1].split(",")[3] == "1.125"
