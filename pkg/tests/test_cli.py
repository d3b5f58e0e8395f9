import json
import subprocess
import sys

import pytest

from fermatlat.cli import main


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_lattice_primitive_fourfold(capsys):
    code, out, err = run_cli(["lattice", "--d", "3", "--n", "4", "--primitive"], capsys)
    assert code == 0
    payload = json.loads(out)
    inv = payload["invariants"]
    assert inv["rank"] == 22
    assert inv["even"] is True
    assert inv["signature"] == [20, 2]
    assert inv["discriminant_divisors"] == [3]
    assert "u_0" in payload["actions"] and "s_1" in payload["actions"]


def test_lattice_primitive_threefold(capsys):
    code, out, _ = run_cli(["lattice", "--d", "3", "--n", "3"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["invariants"]["rank"] == 10
    assert payload["invariants"]["symmetry"] == "antisymmetric"
    assert abs(payload["invariants"]["determinant"]) == 1


def test_lattice_milnor(capsys):
    code, out, _ = run_cli(["lattice", "--d", "3", "--n", "1", "--milnor"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["invariants"]["rank"] == 4


def test_lattice_out_file(tmp_path, capsys):
    target = tmp_path / "lat.json"
    code, out, _ = run_cli(["lattice", "--d", "3", "--n", "2", "--out", str(target)], capsys)
    assert code == 0
    written = json.loads(target.read_text())
    assert written == json.loads(out)["lattice"]
    assert written["rank"] == 6


def test_lattice_bound_exceeded(capsys):
    code, _, err = run_cli(["lattice", "--d", "3", "--n", "99"], capsys)
    assert code == 2
    assert "resource bound" in err


def test_lattice_bad_parameters(capsys):
    code, _, _ = run_cli(["lattice", "--d", "2", "--n", "1"], capsys)
    assert code == 2


def test_verify_suite_runs(capsys):
    code, out, err = run_cli(["verify", "--suite", "hodge"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["results"]["ok"] is True
    assert all(c["status"] in ("pass", "evidence") for c in payload["checks"])


def test_verify_bogus_suite_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "bogus"])
    assert exc.value.code == 2


def test_verify_cubic_with_bound(capsys):
    code, out, _ = run_cli(["verify", "--suite", "cubic", "--bound", "2", "--fast"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["results"]["parameters"]["bound"] == 2
    statuses = {c["status"] for c in payload["checks"]}
    assert "evidence" in statuses and "fail" not in statuses
    _assert_no_floats(payload)


def _assert_no_floats(x):
    if isinstance(x, float):
        raise AssertionError("float leaked into report")
    if isinstance(x, dict):
        for v in x.values():
            _assert_no_floats(v)
    if isinstance(x, list):
        for v in x:
            _assert_no_floats(v)


def test_git_check_3a2(tmp_path, capsys):
    form = {"m": 4, "degree": 3,
            "terms": [{"exponents": [3, 0, 0, 0], "coeff": "1"},
                      {"exponents": [0, 1, 1, 1], "coeff": "-1"}]}
    path = tmp_path / "form.json"
    path.write_text(json.dumps(form))
    code, out, err = run_cli(["git", "check", str(path)], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["results"]["semistable_diagonal"] is True
    assert payload["results"]["stable_diagonal"] is False


def test_git_check_fermat(tmp_path, capsys):
    form = {"m": 4, "degree": 3,
            "terms": [{"exponents": [3, 0, 0, 0], "coeff": "1"},
                      {"exponents": [0, 3, 0, 0], "coeff": "1"},
                      {"exponents": [0, 0, 3, 0], "coeff": "1"},
                      {"exponents": [0, 0, 0, 3], "coeff": "1"}]}
    path = tmp_path / "fermat.json"
    path.write_text(json.dumps(form))
    code, out, _ = run_cli(["git", "check", str(path)], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["results"]["semistable_diagonal"] is True
    assert payload["results"]["stable_diagonal"] is True


def test_git_cone_roundtrip(tmp_path, capsys):
    form = {"m": 3, "degree": 3,
            "terms": [{"exponents": [3, 0, 0], "coeff": "1"},
                      {"exponents": [0, 3, 0], "coeff": "1"},
                      {"exponents": [0, 0, 3], "coeff": "1"}]}
    src = tmp_path / "f.json"
    out_path = tmp_path / "g.json"
    src.write_text(json.dumps(form))
    code, out, _ = run_cli(["git", "cone", str(src), "--out", str(out_path)], capsys)
    assert code == 0
    extended = json.loads(out_path.read_text())
    assert extended["m"] == 4
    # cone then check preserves both flags
    code, out, _ = run_cli(["git", "check", str(out_path)], capsys)
    payload = json.loads(out)
    assert payload["results"]["semistable_diagonal"] is True
    assert payload["results"]["stable_diagonal"] is True


def test_git_parse_failure(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run_cli(["git", "check", str(path)], capsys)
    assert code == 2


def test_outputs_byte_deterministic_across_processes():
    cmd = [sys.executable, "-m", "fermatlat.cli", "lattice", "--d", "3", "--n", "2"]
    runs = [subprocess.run(cmd, capture_output=True, check=True).stdout
            for _ in range(2)]
    assert runs[0] == runs[1]
    assert b'"gram"' in runs[0]


def test_no_floats_in_output(capsys):
    code, out, _ = run_cli(["lattice", "--d", "3", "--n", "2"], capsys)
    payload = json.loads(out)

    def walk(x):
        if isinstance(x, float):
            raise AssertionError("float leaked into report")
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        if isinstance(x, list):
            for v in x:
                walk(v)
    walk(payload)
