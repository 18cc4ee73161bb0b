import json
import subprocess
import sys

import pytest

from virfuse.cli import execute, main


def run(*argv):
    return execute(list(argv))


def test_singular_json(tmp_path):
    status, out = run("singular", "--p", "3", "--q", "1", "--t", "-1", "--cache", str(tmp_path))
    assert status == 0
    doc = json.loads(out)
    terms = {tuple(r["partition"]): r["coeff"] for r in doc["terms"]}
    assert terms == {(1, 1, 1): "1", (2, 1): "4", (3,): "6"}
    assert (doc["c"], doc["h"]) == ("25", "-3")


def test_singular_table(tmp_path):
    status, out = run("singular", "--p", "2", "--q", "1", "--t", "1/2", "--format", "table", "--no-cache")
    assert status == 0
    assert "[2]" in out and "-1/2" in out


def test_fusion_table_format():
    status, out = run("fusion", "--t", "-1", "--max-label", "4", "--format", "table", "--no-cache")
    assert status == 0
    row = next(line for line in out.splitlines() if line.split()[:2] == ["3", "3"])
    assert row.split()[3:] == ["1", "0", "1"]


def test_fusion_json():
    status, out = run("fusion", "--max-label", "4", "--no-cache")
    doc = json.loads(out)
    assert {"m": 3, "n": 3, "r": 4, "dim": 1, "why": "bound+theorem"} in doc["entries"]


def test_verify_ff():
    status, out = run("verify", "--suite", "ff", "--max-level", "6", "--seed", "42", "--format", "table", "--no-cache")
    assert status == 0
    assert out.startswith("ff: ") and "0 failures" in out


def test_verify_all_json():
    status, out = run("verify", "--seed", "3", "--max-level", "6", "--max-label", "6", "--no-cache")
    assert status == 0
    doc = json.loads(out)
    assert [s["suite"] for s in doc["suites"]] == ["sv", "ff", "zhu", "fusion"]
    assert all(not s["failures"] for s in doc["suites"])


def test_generator_command():
    status, out = run("generator", "--m", "4", "--n", "3", "--no-cache")
    assert status == 0
    assert json.loads(out)["labels"] == {"1": 1, "3": 1, "5": 1}


def test_project_command():
    status, out = run("project", "--p", "2", "--q", "1", "--t", "-1", "--lambda", "5/4", "--no-cache")
    doc = json.loads(out)
    assert status == 0 and doc["identity"]
    assert doc["f"] == ["-5/4", "2", "1"]


@pytest.mark.parametrize(
    "argv",
    [
        ("singular", "--p", "1", "--q", "1", "--t", "0.5"),
        ("singular", "--p", "1", "--q", "1", "--t", "one"),
        ("singular", "--p", "1", "--q", "1", "--t", "0"),
        ("singular", "--p", "4", "--q", "4", "--t", "-1"),
        ("fusion", "--max-label", "20"),
        ("verify", "--suite", "nope"),
        ("fusion", "--jobs", "0"),
    ],
)
def test_usage_errors(argv, capsys):
    status, _ = execute(list(argv) + ["--no-cache"])
    assert status == 2


def test_determinism():
    argv = ("verify", "--suite", "zhu", "--seed", "11", "--max-label", "5", "--no-cache")
    assert run(*argv) == run(*argv)
    assert run("fusion", "--max-label", "6", "--no-cache") == run("fusion", "--max-label", "6", "--no-cache", "--jobs", "3")


def test_cache_transparency(tmp_path):
    cold = run("fusion", "--max-label", "6", "--cache", str(tmp_path))
    assert list(tmp_path.glob("sv_*.json"))
    warm = run("fusion", "--max-label", "6", "--cache", str(tmp_path))
    none = run("fusion", "--max-label", "6", "--no-cache")
    assert cold == warm == none


def test_cache_env_fallback(tmp_path, monkeypatch):
    monkeypatch.setenv("VIRFUSE_CACHE", str(tmp_path / "env"))
    run("singular", "--p", "2", "--q", "1", "--t", "-1")
    assert (tmp_path / "env" / "sv_p2_q1_t-1_1.json").exists()
    run("singular", "--p", "2", "--q", "1", "--t", "-1", "--cache", str(tmp_path / "flag"))
    assert (tmp_path / "flag" / "sv_p2_q1_t-1_1.json").exists()


def test_cache_default_dir(tmp_path, monkeypatch):
    monkeypatch.delenv("VIRFUSE_CACHE", raising=False)
    monkeypatch.chdir(tmp_path)
    run("singular", "--p", "1", "--q", "1", "--t", "-1")
    assert (tmp_path / ".virfuse-cache" / "sv_p1_q1_t-1_1.json").exists()


def test_main_prints(capsys):
    assert main(["singular", "--p", "1", "--q", "1", "--t", "-1", "--no-cache"]) == 0
    assert json.loads(capsys.readouterr().out)["terms"] == [{"partition": [1], "coeff": "1"}]


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "virfuse", "singular", "--p", "2", "--q", "1", "--t", "-1", "--no-cache"],
        capture_output=True,
        text=True,
        cwd=tmp_path,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["h"] == "-5/4"
