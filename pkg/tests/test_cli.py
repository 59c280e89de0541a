import json
import subprocess
import sys

import pytest

from quadind.cli import main

WORKED = {"schema": 1, "r": 3, "m": 3, "A": [["1", "1", "1"], ["1", "2", "3"], ["5", "8", "10"]]}


@pytest.fixture
def write(tmp_path):
    def _write(obj, name="inst.json"):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(p)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_check_s1_worked_example(capsys, write):
    code, out, _ = run(capsys, "check-s1", "--in", write(WORKED))
    assert code == 1
    assert out["verdict"] == "dependent"
    assert out["witness"] == ["-5", "4", "-10", "20", "10", "-1"]
    assert out["schema"] == 1


def test_check_s1_independent(capsys, write):
    code, out, _ = run(capsys, "check-s1", "--in", write({"r": 2, "m": 1, "A": [["1", "1"]]}))
    assert code == 0 and out["verdict"] == "independent" and "witness" not in out


def test_check_sk(capsys, write):
    code, out, _ = run(capsys, "check-sk", "--k", "3", "--in", write(WORKED))
    assert code == 1 and out["verdict"] == "dependent" and out["rank"] < 20
    code, _, err = run(capsys, "check-sk", "--k", "9", "--in", write(WORKED))
    assert code == 2 and "--k" in err


def test_classify(capsys, write):
    inst = {"r": 3, "m": 2, "A": [["1", "1", "0"], ["1", "-1", "0"]]}
    code, out, _ = run(capsys, "classify-m2", "--in", write(inst))
    assert code == 0 and out["case"] == "condB" and out["detail"] == [1, 2]
    code, _, err = run(capsys, "classify-m2", "--in", write(WORKED))
    assert code == 2 and "m in" in err


def test_raw_forms_input(capsys, write):
    code, out, _ = run(capsys, "check-s1", "--in", write({"forms": [["1", "0"], ["0", "1"], ["1", "1"]]}))
    assert code == 0
    assert out["normal_form"]["A"] == [["1", "1"]]


def test_witness(capsys, write):
    code, out, _ = run(capsys, "witness", "--in", write(WORKED))
    assert code == 0 and out["expands_to_zero"] is True
    code, out, _ = run(capsys, "witness", "--k", "3", "--in", write(WORKED))
    assert code == 0 and len(out["witness"]) == 20
    code, out, _ = run(capsys, "witness", "--in", write({"r": 2, "m": 1, "A": [["1", "1"]]}))
    assert code == 1 and "witness" not in out


def test_verify_identity(capsys):
    code, out, _ = run(capsys, "verify-identity", "--n", "3")
    assert code == 0 and out["result"] == "holds"
    assert out["details"]["precancellation_terms"] > 100
    for name in ("det_perm", "restriction", "permanent_trace"):
        code, out, _ = run(capsys, "verify-identity", "--name", name)
        assert code == 0 and out["result"] == "holds", name


def test_trace_systems_single_case(capsys):
    code, out, _ = run(capsys, "trace-systems", "--case", "C1a", "--case", "C2d")
    assert code == 0
    assert [s["case"] for s in out["systems"]] == ["C1a", "C2d"]


def test_trace_systems_reports_mismatch(capsys):
    code, out, _ = run(capsys, "trace-systems", "--case", "C4", "--solutions")
    assert code == 1
    assert out["systems"][0]["matches"] is False
    assert out["solution_check"]["holds"] is True


def test_sweep(capsys):
    args = ["sweep", "--r", "3", "--m", "3", "--k", "3", "--trials", "100", "--seed", "7",
            "--mode", "dependent-constructed", "--no-timestamp"]
    code, out, _ = run(capsys, *args)
    assert code == 0
    assert out["counts"]["equivalent"] == 100 and out["counts"]["violations"] == 0
    assert "timestamp" not in out
    _, again, _ = run(capsys, *args)
    assert again == out


def test_sweep_needs_override(capsys):
    code, _, err = run(capsys, "sweep", "--r", "3", "--m", "3", "--k", "2", "--trials", "3")
    assert code == 2 and "override" in err
    code, out, _ = run(capsys, "sweep", "--r", "3", "--m", "3", "--k", "2", "--trials", "3", "--allow-open")
    assert code == 0 and out["observational"] is True


@pytest.mark.parametrize(
    "content, needle",
    [
        ("{not json", "malformed JSON"),
        ({"r": 3, "m": 1, "A": [["1", "2"]]}, "invalid instance"),
        ({"r": 2, "m": 1, "A": [[1, 2]]}, "rational strings"),
        ({"forms": [["1"], ["1", "2"]]}, "differ in length"),
    ],
)
def test_bad_input(capsys, write, content, needle):
    code, out, err = run(capsys, "check-s1", "--in", write(content))
    assert code == 2 and out is None and needle in err


def test_missing_file_and_usage(capsys, tmp_path):
    code, _, err = run(capsys, "check-s1", "--in", str(tmp_path / "absent.json"))
    assert code == 2 and "cannot read" in err
    code, _, _ = run(capsys, "no-such-command")
    assert code == 2
    code, _, _ = run(capsys)
    assert code == 2


def test_module_entry_point(tmp_path):
    p = tmp_path / "w.json"
    p.write_text(json.dumps(WORKED))
    proc = subprocess.run(
        [sys.executable, "-m", "quadind", "check-s1", "--in", "-"],
        input=p.read_text(), capture_output=True, text=True,
    )
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["verdict"] == "dependent"
