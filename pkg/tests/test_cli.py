import json
import subprocess
import sys

import pytest

from artifact import cli
from artifact.report import CheckReport

REPORT_KEYS = {"check", "params", "status", "weights", "witness", "notes", "elapsed_ms"}


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_hilbert_a_table(capsys):
    code, out, _ = run(capsys, "hilbert", "A", "--max-weight", "6", "--json")
    assert code == 0
    payload = json.loads(out)
    assert [r["computed"] for r in payload["weights"]] == [1, 0, 1, 1, 2, 2, 4]
    assert payload["status"] == "pass"


def test_hilbert_lie_w3(capsys):
    code, out, _ = run(capsys, "hilbert", "lieW3", "--max-weight", "11", "--json")
    assert code == 0
    rows = json.loads(out)["weights"]
    assert rows[-1] == {"w": 11, "d": 3, "computed": 1, "expected": 1, "ok": True}


def test_hilbert_two_var(capsys):
    code, out, _ = run(capsys, "hilbert", "Mmin", "--two-var", "--max-weight", "13", "--json")
    assert code == 0
    rows = {(r["w"], r["d"]): r["computed"] for r in json.loads(out)["weights"]}
    assert rows[(8, 0)] == 1 and rows[(13, 1)] == 2


def test_basis_lie_w1(capsys):
    code, out, _ = run(capsys, "basis", "lieW1", "--weight", "5", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["basis"] == [{"basis": "lyndon-xy", "terms": [{"word": "xxxxy", "c": "1/1"}]}]


def test_basis_a_weight_two(capsys):
    code, out, _ = run(capsys, "basis", "A", "--weight", "2")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 1
    assert json.loads(lines[0])["vars"] == ["A", "B", "Ap", "Bp"]


def test_verify_cond_single_pair(capsys):
    code, out, _ = run(capsys, "verify", "cond-ij", "--i", "3", "--j", "9", "--json")
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == REPORT_KEYS
    assert payload["params"]["i"] == 3 and payload["status"] == "pass"


def test_dump_poly_p37(capsys):
    code, out, _ = run(capsys, "dump-poly", "P", "--i", "3", "--j", "7")
    assert code == 0
    assert json.loads(out) == {"vars": ["x2", "x6"], "terms": [{"e": [1, 0], "c": "7/10"}]}


def test_json_is_deterministic(capsys):
    outs = []
    for _ in range(2):
        code, out, _ = run(capsys, "verify", "period-dims", "--max-weight", "16", "--json")
        assert code == 0
        payload = json.loads(out)
        payload.pop("elapsed_ms")
        outs.append(payload)
    assert outs[0] == outs[1]


def test_out_file(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "sigma4-annihilates", "--json", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["check"] == "sigma4-annihilates"


@pytest.mark.parametrize("argv", [
    ["verify", "no-such-check"],
    ["hilbert", "A", "--two-var"],
    ["verify", "molien", "--sigma-degree", "2"],
    ["verify", "cond-ij", "--i", "3"],
    ["verify", "complex-homology", "--max-weight", "12"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("artifact: error:")


def test_argparse_rejects_unknown_space():
    with pytest.raises(SystemExit) as exc:
        cli.main(["hilbert", "Z"])
    assert exc.value.code == 2


def test_failing_check_exits_1(capsys, monkeypatch):
    def broken(N):
        rep = CheckReport("broken", {"max_weight": N})
        rep.row(N, 0, 1)
        return rep.finish()

    monkeypatch.setitem(cli.CHECKS, "broken", broken)
    code, out, _ = run(capsys, "verify", "broken", "--json")
    assert code == 1
    payload = json.loads(out)
    assert payload["status"] == "fail"
    assert payload["witness"] == {"w": 12, "d": None, "computed": 0, "expected": 1}


def test_global_flags_before_subcommand(capsys):
    code, out, _ = run(capsys, "--json", "--max-weight", "8", "--threads", "1", "verify", "m0-hilbert")
    assert code == 0
    assert json.loads(out)["params"]["max_weight"] == 8


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "artifact", "verify", "a-presentation"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "a-presentation" in proc.stdout
