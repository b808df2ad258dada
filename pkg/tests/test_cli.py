import json
from pathlib import Path

import pytest

from spectral_lift.cli import main, problem_file

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def test_check_pass_and_fail(capsys):
    code, out = run(capsys, "check", PROBLEMS / "check_pass.json")
    assert code == 0 and json.loads(out)["pass"] is True
    code, out = run(capsys, "check", PROBLEMS / "check_fail.json")
    assert code == 2 and json.loads(out)["pass"] is False


def test_lift_and_verify(capsys, tmp_path):
    code, out = run(capsys, "lift", PROBLEMS / "lift_n2.json")
    assert code == 0
    res = json.loads(out)
    assert res["certificate"]["ok"]
    payload = json.loads((PROBLEMS / "lift_n2.json").read_text())["payload"]
    vfile = tmp_path / "v.json"
    vfile.write_text(json.dumps(problem_file("verify", {"problem": payload, "Phi": res["Phi"]})))
    code, out = run(capsys, "verify", vfile)
    assert code == 0 and json.loads(out)["ok"]
    # tamper with one entry
    res["Phi"]["entries"][0][0]["coeffs"] = [{"re": ["1", "1"], "im": ["0", "1"]}]
    vfile.write_text(json.dumps(problem_file("verify", {"problem": payload, "Phi": res["Phi"]})))
    code, out = run(capsys, "verify", vfile)
    assert code == 2 and not json.loads(out)["ok"]


def test_two_node_lift(capsys):
    code, out = run(capsys, "lift", PROBLEMS / "lift_two_nodes.json")
    assert code == 0 and json.loads(out)["mode"] == "float-multi-node"


def test_lift_conditions_fail(capsys, tmp_path):
    payload = json.loads((PROBLEMS / "check_fail.json").read_text())["payload"]
    f = tmp_path / "p.json"
    f.write_text(json.dumps(problem_file("lift", payload)))
    code, out = run(capsys, "lift", f)
    assert code == 2 and json.loads(out)["error"] == "conditions-fail"


def test_mjf(capsys):
    code, out = run(capsys, "mjf", PROBLEMS / "mjf_diag.json")
    res = json.loads(out)
    assert code == 0 and res["certificate"]["A_T_equals_T_A_prime"]
    assert res["transition"]["entries"][0][1] == {"re": ["-2", "1"], "im": ["0", "1"]}


def test_counterexample(capsys):
    code, out = run(capsys, "counterexample", 3, 3, 0, "1/2")
    res = json.loads(out)
    assert code == 0 and (res["achieved_order"], res["required_order"], res["violated"]) == (2, 3, True)
    code, out = run(capsys, "counterexample", 3, 4, "--table")
    assert "achieved 2, required 4" in out


def test_deterministic_output(capsys):
    outs = {run(capsys, "lift", PROBLEMS / "lift_two_nodes.json", "--seed", 4)[1] for _ in range(2)}
    assert len(outs) == 1


@pytest.mark.parametrize("text", ["{bad", "[]", '{"version": "spectral-lift/1", "kind": "lift", "payload": {}, "x": 1}',
                                  '{"version": "other", "kind": "check", "payload": {}}'])
def test_malformed_inputs_exit_one(capsys, tmp_path, text):
    f = tmp_path / "bad.json"
    f.write_text(text)
    code, _ = run(capsys, "check", f)
    assert code == 1


def test_unknown_payload_field(capsys, tmp_path):
    payload = json.loads((PROBLEMS / "check_pass.json").read_text())["payload"]
    payload["extra"] = 1
    f = tmp_path / "p.json"
    f.write_text(json.dumps(problem_file("check", payload)))
    assert run(capsys, "check", f)[0] == 1


def test_usage_errors(capsys):
    assert run(capsys, "counterexample", 2, 3)[0] == 1
    assert run(capsys, "nonsense")[0] == 1


def test_selftest_quick(capsys):
    code, out = run(capsys, "selftest", "--quick", "--json")
    res = json.loads(out)
    assert code == 0 and res["pass"]
