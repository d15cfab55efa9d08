import io
import json
import subprocess
import sys

import pytest

from hopfrep.algebra import Algebra
from hopfrep.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def test_report_lambda0():
    code, text = call("--p", "3", "--s", "1", "--t", "2", "--lambda", "0", "--mu", "1", "report", "--format", "json")
    assert code == 0
    doc = json.loads(text)
    assert doc["instance"] == {"p": 3, "s": 1, "t": 2, "lambda": "0", "mu": "1", "dim": 54}
    assert doc["summary"] == {"dim": 54, "blocks": [27, 27], "simples": [1, 1], "ext_diag": [2, 2], "wildness": ["WILD", "WILD"]}
    assert all(c["status"] == "pass" for c in doc["checks"])
    assert all(set(c) == {"name", "status", "observed", "expected", "citation", "family"} for c in doc["checks"])


def test_report_char2():
    code, text = call("--p", "2", "--s", "1", "--t", "3", "report")
    assert code == 0
    doc = json.loads(text)
    s = doc["summary"]
    assert s["dim"] == 96 and s["blocks"] == [32, 32, 32]
    assert s["wildness"] == ["WILD"] * 3
    ext = {c["name"]: c["observed"] for c in doc["checks"] if c["family"] == "ext" and c["name"].startswith("ext(")}
    assert ext["ext(0,0)"] == 2 and ext["ext(0,1)"] == 0 and ext["ext(2,2)"] == 2


def test_local_algebra_simples():
    code, text = call("--p", "3", "--s", "1", "--t", "1", "--lambda", "1", "--mu", "0", "simples")
    assert code == 0
    checks = {c["name"]: c for c in json.loads(text)["checks"]}
    assert checks["simple dimensions"]["observed"] == [1]
    assert checks["local algebra"]["status"] == "pass"
    assert "local algebra" in checks["local algebra"]["citation"]


def test_markdown_has_claim_column():
    code, text = call("--p", "3", "--s", "1", "--t", "2", "blocks", "--format", "md")
    assert code == 0
    assert "| check | status | observed | expected | claim |" in text
    assert "## blocks" in text


def test_empty_command_list():
    code, text = call("--p", "3", "--s", "1", "--t", "2")
    assert code == 0
    doc = json.loads(text)
    assert doc["checks"] == [] and doc["instance"]["dim"] == 54
    assert "summary" not in doc


def test_wildness_unknown_rows():
    code, text = call("--p", "3", "--s", "1", "--t", "2", "--lambda", "1", "--mu", "1", "wildness", "--format", "md")
    assert code == 0
    row = [line for line in text.splitlines() if line.startswith("| H e_1 |")][0]
    assert "| unknown |" in row


def test_tensor_command():
    code, text = call("--p", "3", "--s", "1", "--t", "2", "--lambda", "1", "tensor", "--i", "1", "--j", "1")
    assert code == 0
    checks = {c["name"]: c for c in json.loads(text)["checks"]}
    assert checks["soc S_1(x)S_1"]["observed"] == {"S_0": 1}
    code, _ = call("--p", "3", "--s", "1", "--t", "2", "--lambda", "1", "tensor", "--i", "0", "--j", "1")
    assert code == 0
    code, _ = call("--p", "3", "--s", "1", "--t", "2", "tensor", "--i", "5", "--j", "1")
    assert code == 2


def test_normalised_instance():
    code, text = call("--p", "3", "--s", "1", "--t", "2", "--lambda", "2", "--mu", "1", "simples")
    assert code == 0
    doc = json.loads(text)
    fams = {c["family"] for c in doc["checks"]}
    assert "normalisation" in fams
    norm = {c["name"]: c for c in doc["checks"] if c["family"] == "normalisation"}
    assert all(c["status"] == "pass" for c in norm.values())
    assert norm["transported simples"]["observed"] == [1, 3]


@pytest.mark.parametrize(
    "argv",
    [
        ["--p", "4", "--s", "1", "--t", "2", "report"],
        ["--p", "3", "--s", "1", "--t", "3", "report"],
        ["--s", "1", "--t", "2", "report"],
        ["--p", "3", "--s", "1", "--t", "2", "--lambda", "x", "report"],
        ["--p", "2", "--s", "1", "--t", "3", "--lambda", "1", "report"],
        ["--p", "3", "--s", "0", "--t", "2", "report"],
    ],
)
def test_invalid_configuration(argv, capsys):
    code, text = call(*argv)
    assert code == 2 and text == ""
    assert "usage:" in capsys.readouterr().err


def test_unknown_flag_rejected():
    with pytest.raises(SystemExit) as info:
        call("--p", "3", "--s", "1", "--t", "2", "--bogus", "1", "report")
    assert info.value.code == 2


def test_byte_identical_output():
    argv = ("--p", "2", "--s", "1", "--t", "3", "--seed", "4", "report", "--format", "md")
    assert call(*argv) == call(*argv)


def test_injected_bug_fails(monkeypatch):
    orig = Algebra._build_charp

    def broken(self):
        orig(self)
        # stray term in a column the basis factorisation never inspects
        self.Lb = self.Lb.copy()
        self.Lb[0, -1] = (self.Lb[0, -1] + 1) % self.p

    monkeypatch.setattr(Algebra, "_build_charp", broken)
    code, text = call("--p", "3", "--s", "1", "--t", "2", "report")
    assert code == 1
    doc = json.loads(text)
    failed = [c["name"] for c in doc["checks"] if c["status"] == "fail"]
    assert failed and all(name.startswith("relation ") for name in failed)
    assert "relation b^p = mu(1 - g^p)" in failed
    # structural failure stops the report before the representation suites
    assert {c["family"] for c in doc["checks"]} == {"algebra"}


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "hopfrep", "--p", "3", "--s", "1", "--t", "1", "verify-algebra"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert res.returncode == 0, res.stderr
    assert json.loads(res.stdout)["instance"]["dim"] == 27
