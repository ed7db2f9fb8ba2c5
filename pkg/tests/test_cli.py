import json
import subprocess
import sys

import pytest

from superyang.cli import main


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_ybe(capsys):
    code, out, _ = run(["ybe", "--kind", "gl", "--m", "1", "--n", "1", "--json"], capsys)
    assert code == 0 and json.loads(out)["passed"]
    code, out, _ = run(["--json", "ybe", "--kind", "osp", "--n", "1"], capsys)
    assert code == 0 and json.loads(out)["params"] == {"kind": "osp", "n": 1}


@pytest.mark.parametrize("args", [
    ["ybe", "--kind", "sl"],
    ["ybe", "--kind", "gl"],
    [],
    ["idempotent", "--shape", "2,1", "--tableau", "2,1,3"],
    ["idempotent", "--shape", "1,2"],
    ["module", "--kind", "osp", "--n", "1", "--d", "2"],
])
def test_usage_errors(args, capsys):
    code, _, err = run(args, capsys)
    assert code == 2 and "usage error" in err


def test_idempotent_both(capsys):
    code, out, _ = run(["idempotent", "--shape", "2", "--tableau", "1,2", "--method", "both",
                        "--json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["equal"] and data["murphy"] == {"12": "1/2", "21": "1/2"}
    code, out, _ = run(["idempotent", "--shape", "1,1", "--json"], capsys)
    assert json.loads(out)["murphy"] == {"12": "1/2", "21": "-1/2"}


def test_fusion_resource_bound(capsys, monkeypatch):
    code, _, err = run(["idempotent", "--shape", "3,2", "--method", "fusion"], capsys)
    assert code == 3 and "resource bound" in err
    code, _, _ = run(["--fusion-bound", "2", "idempotent", "--shape", "2,1", "--method",
                      "fusion"], capsys)
    assert code == 3
    monkeypatch.setenv("SUPERYANG_FUSION_BOUND", "2")
    code, _, _ = run(["idempotent", "--shape", "2,1", "--method", "fusion"], capsys)
    assert code == 3


def test_module_gl(capsys):
    code, out, _ = run(["module", "--kind", "gl", "--m", "1", "--n", "1", "--shape", "2,1",
                        "--variant", "rprime", "--json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["matches_expected"] and data["expected"] == "pi_sharp"
    assert data["highest_weight"] == [{"num": ["2", "1"], "den": ["0", "1"]},
                                      {"num": ["-1", "1"], "den": ["0", "1"]}]


def test_module_not_in_hook(capsys):
    code, _, err = run(["module", "--kind", "gl", "--m", "1", "--n", "1", "--shape", "2,2"],
                       capsys)
    assert code == 4 and "lambda_2 = 2 > n = 1" in err


def test_module_osp(capsys):
    code, out, _ = run(["module", "--kind", "osp", "--n", "2", "--d", "1", "--json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["drinfeld_str"] == "(u + 1, u - 1, u - 1, 1)"
    assert data["central_identity"] and data["rtt_factors"]


def test_json_is_deterministic(capsys):
    args = ["module", "--kind", "osp", "--n", "2", "--d", "2", "--json"]
    _, a, _ = run(args, capsys)
    _, b, _ = run(args, capsys)
    assert a == b and a.endswith("\n") and "\r" not in a
    assert a == json.dumps(json.loads(a), sort_keys=True, ensure_ascii=False) + "\n"


@pytest.mark.slow
def test_suite_quick_json():
    proc = subprocess.run([sys.executable, "-m", "superyang", "suite", "--level", "quick",
                           "--json"], capture_output=True, text=True, timeout=600)
    assert proc.returncode == 0, proc.stderr
    lines = [json.loads(x) for x in proc.stdout.splitlines()]
    assert lines[-1]["summary"] and lines[-1]["failed"] == 0
    assert all(r["passed"] for r in lines[:-1])
    assert {r["criterion"] for r in lines[:-1]} == set(range(1, 10))


@pytest.mark.slow
def test_suite_threads_match_serial(capsys):
    from superyang.checks import run_suite
    assert run_suite("quick", workers=4) == run_suite("quick", workers=1)
