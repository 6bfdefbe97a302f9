import json

import pytest

from squatcalc.cli import JobSpec, build_parser, job_from_args, main


def _out(capsys):
    captured = capsys.readouterr()
    return json.loads(captured.out) if captured.out.strip() else None, captured.err


def test_spectrum_of_a_fixture(capsys):
    assert main(["spectrum", "--fixture", "diag-i"]) == 0
    data, _ = _out(capsys)
    [sphere] = data["spheres"]
    assert sphere["x"] == pytest.approx(0.0, abs=1e-14)
    assert sphere["y"] == pytest.approx(1.0)
    assert data["norm_bound"] == pytest.approx(1.0)


def test_fixture_command(capsys):
    assert main(["fixture", "real-scalar", "--param", "t=2", "--param", "n=3"]) == 0
    data, _ = _out(capsys)
    assert data["n"] == 3
    assert data["entries"][2][2] == [2.0, 0.0, 0.0, 0.0]


def test_resolve_closed_form(capsys):
    assert main(["resolve", "--fixture", "diag-i", "--point", "2,0,0,0"]) == 0
    data, _ = _out(capsys)
    assert data["form"] == "closed"
    assert data["equation_residual"] <= 1e-14


def test_resolve_on_the_spectrum(capsys):
    assert main(["resolve", "--fixture", "diag-i", "--point", "0,0,1,0"]) == 5
    data, err = _out(capsys)
    assert data is None
    assert json.loads(err.strip().splitlines()[-1])["error"] == "not_in_resolvent_set"


def test_resolve_series_form(capsys):
    assert main(["resolve", "--fixture", "diag-i", "--point", "0,3,0,0", "--form", "series"]) == 0
    data, _ = _out(capsys)
    assert data["form"] == "series"


def test_bad_input_exits_with_two(capsys, tmp_path):
    assert main(["spectrum", "--fixture", "nope"]) == 2
    assert main(["spectrum"]) == 2
    assert main(["spectrum", "--input", str(tmp_path / "missing.json")]) == 2
    assert main(["calc", "--fixture", "diag-i", "--function", '{"type": "mystery"}']) == 2


def test_calc_with_inline_function(capsys):
    spec = json.dumps({"type": "polynomial", "coeffs": [[0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0]]})
    assert main(["calc", "--fixture", "diag-i", "--function", spec]) == 0
    data, _ = _out(capsys)
    assert data["value"]["entries"][0][0][0] == pytest.approx(-1.0, abs=1e-9)
    assert data["error_estimate"] < 1e-8


def test_calc_from_files(capsys, tmp_path):
    op = tmp_path / "t.json"
    op.write_text(json.dumps({"n": 1, "entries": [[[2.0, 0.0, 0.0, 0.0]]]}), encoding="utf-8")
    fn = tmp_path / "f.json"
    fn.write_text(json.dumps({"type": "resolvent_shift", "alpha": 5.0}), encoding="utf-8")
    out = tmp_path / "out.json"
    assert main(["calc", "--input", str(op), "--function", str(fn), "--output", str(out)]) == 0
    assert capsys.readouterr().out == ""
    data = json.loads(out.read_text(encoding="utf-8"))
    assert data["value"]["entries"][0][0][0] == pytest.approx(-1.0 / 3.0, rel=1e-9)


def test_calc_unbounded(capsys):
    spec = json.dumps({"type": "intrinsic_rational", "num": [1], "den": [3, 1]})
    assert main(["calc-unbounded", "--fixture", "random", "--param", "n=2", "--function", spec]) == 0
    data, _ = _out(capsys)
    assert data["discrepancy"] <= 1e-6
    assert data["k"] > 0


def test_fn_series(capsys):
    spec = json.dumps({"type": "resolvent_shift", "alpha": -5.0})
    assert main(["fn-series", "--fixture", "real-scalar", "--param", "t=0.2", "--param", "n=2",
                 "--function", spec, "--n-max", "10", "--nodes", "512"]) == 0
    data, _ = _out(capsys)
    assert data["axis_R"] == pytest.approx(0.1)
    assert data["n_max"] == 10


def test_unbounded_rejects_exp(capsys):
    assert main(["calc-unbounded", "--fixture", "diag-i", "--function", '{"type": "exp"}']) == 6


def test_verify_one_suite(capsys):
    assert main(["verify", "--suite", "lemma", "--quiet"]) == 0
    data, err = _out(capsys)
    assert data["passed"] is True
    assert "lemma" in data["suites"]
    assert "[squatcalc] verification" not in err


def test_verify_negative_control(capsys):
    assert main(["verify", "--suite", "resolvent_equation", "--negative-control"]) == 1
    data, err = _out(capsys)
    assert data["passed"] is False
    assert "above contract" in err
    assert "[squatcalc] verification" in err


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("SQUATCALC_SEED", "17")
    ns = build_parser().parse_args(["verify"])
    job = job_from_args(ns)
    assert isinstance(job, JobSpec)
    assert job.seed == 17
    assert job.suites is None


def test_bad_slice_unit(capsys):
    spec = json.dumps({"type": "exp"})
    assert main(["calc", "--fixture", "diag-i", "--function", spec, "--slice", "1,0,0,0"]) == 2
