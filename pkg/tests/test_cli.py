import json
import os
import subprocess
import sys

import pytest

from qweyl.cli import main


def run_cli(*args, env=None):
    e = dict(os.environ)
    e.update(env or {})
    return subprocess.run([sys.executable, "-m", "qweyl", *args], capture_output=True, text=True, env=e)


def test_pbw_example():
    r = run_cli("verify-pbw", "--n", "2", "--max-degree", "4")
    assert r.returncode == 0
    assert "counts (1,4,10,20,35)" in r.stdout


def test_classical_example():
    r = run_cli("verify-classical-limit", "--n", "1", "--lambda", "3", "--max-degree", "5")
    assert r.returncode == 0


def test_serre_example():
    r = run_cli("verify-serre", "--n", "2", "--serre-depth", "6")
    assert r.returncode == 0
    assert "16 relation instances per side" in r.stdout


@pytest.mark.parametrize("args", [
    ["verify-pbw", "--n", "0"],
    ["verify-pbw", "--max-degree", "-1"],
    ["verify-dualrep", "--n", "3", "--lambda-mu", "1"],
    ["verify-pbw", "--lambda", "abc"],
    ["verify-weyl", "--form", "Q"],
    ["nonsense"],
])
def test_invalid_config_exits_2(args):
    assert main(args) == 2


def test_env_jobs_validated():
    r = run_cli("verify-pbw", env={"QWEYL_JOBS": "x"})
    assert r.returncode == 2


def test_failure_exits_1(tmp_path):
    out = tmp_path / "r.json"
    code = main(["verify-classical-limit", "--n", "2", "--lambda", "0", "--max-degree", "2", "--out", str(out)])
    assert code == 1
    rep = json.loads(out.read_text())
    bad = [c for c in rep["checks"] if c["status"] == "fail"]
    assert bad and set(bad[0]["counterexample"]) == {"source", "target", "got", "expected"}


def test_report_is_deterministic_across_jobs(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run_cli("verify-weyl", "--n", "2", "--max-degree", "2", "--out", str(a)).returncode == 0
    assert run_cli("verify-weyl", "--n", "2", "--max-degree", "2", "--out", str(b),
                   env={"QWEYL_JOBS": "3"}).returncode == 0
    assert a.read_bytes() == b.read_bytes()
    rep = json.loads(a.read_text())
    assert rep["command"] == "verify-weyl"
    assert rep["config"]["n"] == 2 and rep["config"]["lambda"] == "formal"


def test_membership_command():
    assert main(["derive-membership", "--n", "2", "--form", "L"]) == 0
