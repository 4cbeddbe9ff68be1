import csv
import json
import subprocess
import sys

import pytest

from charstat import cli


def run(capsys, *argv):
    code = cli.run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_symbolic_class_average(capsys):
    code, out, _ = run(capsys, "reynolds", "--stat", "exc", "--symbolic")
    assert code == 0
    assert out == "(n - m1)/2\n"


def test_path_expansion_in_schur_basis(capsys):
    code, out, _ = run(capsys, "expand-path", "--mu", "3,2,1", "--basis", "schur")
    assert code == 0
    assert out.strip() == "6*s(6) - 4*s(5,1) + 2*s(4,1,1) + 2*s(3,3) - s(3,2,1)"


def test_locality_dimension(capsys):
    assert run(capsys, "loc-dim", "--n", "5", "--k", "1")[:2] == (0, "17\n")


def test_json_output_is_parseable(capsys):
    code, out, _ = run(capsys, "--format", "json", "loc-dim", "--n", "4", "--k", "2")
    data = json.loads(out)
    assert code == 0
    assert data["by_lis"] == data["by_shadow"] == data["by_hooks"]
    code, out, _ = run(capsys, "reynolds", "--stat", "maj", "--format", "json")
    assert json.loads(out)["class_polynomial"]["denominator_roots"] == []


def test_characters(capsys):
    assert run(capsys, "char", "--lambda", "4,3,1", "--mu", "3,2,2,1")[1] == "-1\n"
    code, out, _ = run(capsys, "char", "--lambda", "7", "--partial", "n=7;I=;J=")
    assert (code, out) == (0, "5040\n")
    assert run(capsys, "char-poly", "--lambda", "1")[1].strip() == "m1 - 1"


def test_atomic_expansion(capsys):
    code, out, _ = run(capsys, "atomic", "--n", "6", "--I", "4,5,6", "--J", "5,4,3", "--basis", "p")
    assert code == 0
    assert out.splitlines()[1] == "2*p(4,2) + 2*p(3,2,1) + p(2,2,2) + p(2,2,1,1)"


def test_moments_and_values_on_a_class(capsys):
    assert run(capsys, "moment", "--stat", "exc", "--degree", "1", "--cycle-type", "4")[1] == "2\n"
    assert run(capsys, "variance", "--stat", "exc")[1] == "(-2*m2 + n - m1)/12\n"
    assert run(capsys, "reynolds", "--stat", "fix", "--cycle-type", "2,1,1")[1] == "2\n"


def test_limit_and_shadow(capsys):
    out = run(capsys, "limit", "--stat", "exc")[1].splitlines()
    assert out[0].startswith("mean/n^p -> ")
    assert run(capsys, "shadow", "--w", "4,1,8,5,3,6,2,7")[1] == "I=2,4,5,7 J=4,8,5,3 s=4\n"


def test_inline_statistic(capsys):
    stat = json.dumps(cli.builtin("exc").to_json())
    assert run(capsys, "reynolds", "--stat", stat)[1] == "(n - m1)/2\n"


def test_domain_errors_exit_two(capsys):
    code, _, err = run(capsys, "char", "--lambda", "3,1", "--mu", "2,1")
    assert code == 2 and "domain error" in err
    assert run(capsys, "reynolds", "--stat", "nonsense")[0] == 2
    assert run(capsys, "shadow", "--w", "1,1,2")[0] == 2


def test_resource_errors_exit_three(capsys, monkeypatch):
    monkeypatch.setenv("CHARSTAT_MAX_N", "4")
    code, _, err = run(capsys, "loc-dim", "--n", "6", "--k", "1")
    assert code == 3 and "resource error" in err


def test_unknown_flags_are_rejected(capsys):
    with pytest.raises(SystemExit) as info:
        cli.run(["loc-dim", "--n", "4", "--k", "1", "--bogus"])
    assert info.value.code == 2


def test_sampling_writes_csv(capsys, tmp_path):
    target = tmp_path / "runs.csv"
    code, out, _ = run(capsys, "sample", "--cycle-type", "5,3", "--count", "500", "--seed", "42",
                       "--stat", "exc", "--csv", str(target), "--threads", "2")
    assert code == 0 and out.startswith("count=500 ")
    with target.open() as handle:
        rows = list(csv.DictReader(handle))
    assert len(rows) == 500
    assert rows[0].keys() == {"seed", "n", "cycle_type", "stat", "value"}
    assert {(r["seed"], r["n"], r["cycle_type"], r["stat"]) for r in rows} == {("42", "8", "5,3", "exc")}
    again = run(capsys, "--threads", "1", "sample", "--cycle-type", "5,3", "--count", "500", "--seed", "42")[1]
    assert again == out


def test_verify_passes_on_a_correct_build(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all", "--n-max", "6")
    assert code == 0
    assert "FAIL" not in out
    assert out.splitlines()[-1].endswith("checks passed")


def test_console_entry_point():
    done = subprocess.run([sys.executable, "-m", "charstat", "loc-dim", "--n", "3", "--k", "1"],
                          capture_output=True, text=True, check=False)
    assert (done.returncode, done.stdout) == (0, "5\n")
