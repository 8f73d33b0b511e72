import json
import subprocess
import sys

import pytest

from e6_example import COARSE, WORD
from weylres.cli import main

D5_SIGMA2 = "z1 u y1 x1 u z1 y2 y1 u x1"
LABELS = "bourbaki:z2,x1,z1,u,y1,y2"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_affine_diagram_suggests_enlarging(capsys):
    code, out, _ = run(capsys, "diagram", "--format", "1,6,8,3")
    assert code == 0
    assert out.splitlines()[0] == "T_{2,4,4}, affine"
    assert "enlarge" in out


def test_cosets_of_d5(capsys):
    code, out, _ = run(capsys, "cosets", "--format", "1,5,5,1", "--max-length", "12")
    assert code == 0 and out.startswith("3 representatives")
    code, out, _ = run(capsys, "cosets", "--format", "1,5,5,1", "--json")
    assert [r["length"] for r in json.loads(out)["representatives"]] == [0, 3, 10]


def test_example_coarse_table(capsys):
    code, out, _ = run(capsys, "betti", "--format", "1,5,6,2", "--sigma", WORD, "--labels", LABELS, "--exchange", "--text")
    assert code == 0
    assert out.strip() == COARSE


def test_bourbaki_map_with_explicit_keys(capsys):
    keyed = "bourbaki:1=z2,2=x1,3=z1,4=u,5=y1,6=y2"
    code, out, _ = run(capsys, "betti", "--format", "1,5,6,2", "--sigma", WORD, "--labels", keyed, "--exchange")
    assert code == 0 and out.strip() == COARSE


def test_resolve_check_round_trip(capsys, tmp_path):
    path = tmp_path / "c.json"
    code, _, _ = run(capsys, "resolve", "--format", "1,5,5,1", "--sigma", D5_SIGMA2, "--out", str(path))
    assert code == 0
    first = path.read_text()
    code, out, _ = run(capsys, "check", str(path), "--json")
    report = json.loads(out)
    assert code == 0 and report["ok"] and report["round_trip"]
    # same seed, same report
    assert run(capsys, "check", str(path), "--json")[1] == out
    code, out, _ = run(capsys, "resolve", "--format", "1,5,5,1", "--sigma", D5_SIGMA2, "--json")
    assert out == first


def test_link_hsm_invariants_bemult(capsys, tmp_path):
    src, dst = tmp_path / "c.json", tmp_path / "l.json"
    run(capsys, "resolve", "--format", "1,5,5,1", "--sigma", D5_SIGMA2, "--out", str(src))
    code, out, _ = run(capsys, "link", str(src), "--cols", "0,1,2", "--out", str(dst))
    assert code == 0 and "(1, 4, 5, 2)" in out
    assert run(capsys, "check", str(dst))[0] == 0
    code, out, _ = run(capsys, "hsm", str(src), "--json")
    assert code == 0 and json.loads(out)["replay"]["ok"]
    code, out, _ = run(capsys, "invariants", str(src), "--json")
    assert code == 0 and json.loads(out)["deficits"] == [1, -3]
    code, out, _ = run(capsys, "bemult", str(src))
    assert code == 0 and "a1: 1" in out


def test_pluecker_with_identities(capsys):
    code, out, _ = run(capsys, "pluecker", "--format", "1,5,5,1", "--sigma", "z1 u x1", "--identities")
    assert code == 0 and out.strip().endswith("PASS")


def test_dims(capsys):
    code, out, _ = run(capsys, "dims", "--format", "1,5,6,2", "--json")
    data = json.loads(out)
    assert code == 0 and [v for _, v in data["z1_graded_dims"]] == [5, 20, 28, 20, 5] and data["total"] == 78


def test_verification_failure_exits_one(capsys, tmp_path):
    path = tmp_path / "c.json"
    run(capsys, "resolve", "--format", "1,5,5,1", "--sigma", D5_SIGMA2, "--out", str(path))
    data = json.loads(path.read_text())
    data["differentials"][0]["entries"][0][0] = [{"c": "1", "e": [0] * 10}]
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "check", str(path))
    assert code == 1 and out.strip().endswith("FAIL")


@pytest.mark.parametrize(
    "argv",
    [
        ["resolve", "--format", "1,5,5,1"],
        ["betti", "--format", "1,5,5,1", "--sigma", "q"],
        ["betti", "--format", "1,5,7,1", "--sigma", "u"],
        ["betti", "--format", "1,5,5,1", "--sigma", "x1"],
        ["link", "missing.json"],
        ["check", "missing.json"],
        ["nosuch"],
    ],
)
def test_usage_errors_exit_two(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_threads_variable_is_validated(monkeypatch, capsys):
    monkeypatch.setenv("THREADS", "zero")
    assert run(capsys, "dims", "--format", "1,5,6,2")[0] == 2
    monkeypatch.setenv("THREADS", "4")
    assert run(capsys, "dims", "--format", "1,5,6,2")[0] == 0


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "weylres", "diagram", "--format", "1,5,6,2"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.startswith("T_{2,3,3}, finite")
