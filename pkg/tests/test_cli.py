import subprocess
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
STRUCTURES = ROOT / "structures"


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "warel.cli", *args],
        capture_output=True,
        text=True,
        cwd=ROOT,
    )


def test_check_a1():
    out = run_cli("check", str(STRUCTURES / "a1.alg"))
    assert out.returncode == 0
    assert "WA: yes, SA: yes, RA: yes" in out.stdout


def test_check_a2_with_laws():
    out = run_cli("check", str(STRUCTURES / "a2.alg"), "--laws", "--elements-mode")
    assert out.returncode == 0
    assert "classify.isRA = yes" in out.stdout
    assert out.stdout.count("= fail") == 0
    assert "laws.cycle-law = pass" in out.stdout


def test_check_reports_failed_axioms():
    out = run_cli("check", str(STRUCTURES / "no_identity.alg"))
    assert "WA: no" in out.stdout
    assert "ra6" in out.stdout


def test_check_parse_error(tmp_path):
    bad = tmp_path / "bad.alg"
    bad.write_text("atoms: e d\nidentity: e\nfacts:\n  e <= zz ; d\n")
    out = run_cli("check", str(bad))
    assert out.returncode == 2
    assert "line 4" in out.stderr


def test_represent_a1():
    out = run_cli("represent", str(STRUCTURES / "a1.alg"), "--passes", "1", "--depth", "2")
    assert out.returncode == 0
    assert "labelling.points = 1" in out.stdout
    assert out.stdout.count("= fail") == 0


def test_represent_a2_passes_everything():
    out = run_cli("represent", str(STRUCTURES / "a2.alg"), "--passes", "2", "--depth", "3")
    assert out.returncode == 0
    assert out.stdout.count("= fail") == 0
    assert "final.image-structure-matches = pass" in out.stdout


def test_represent_refuses_non_wa():
    out = run_cli("represent", str(STRUCTURES / "no_identity.alg"))
    assert out.returncode == 1
    assert "represent.precondition-wa = fail" in out.stdout
    assert "ra6" in out.stdout


def test_report_determinism(tmp_path):
    r1 = tmp_path / "r1.txt"
    r2 = tmp_path / "r2.txt"
    for path in (r1, r2):
        out = run_cli(
            "--report", str(path), "represent", str(STRUCTURES / "a2.alg"),
            "--passes", "2", "--depth", "3",
        )
        assert out.returncode == 0
    assert r1.read_bytes() == r2.read_bytes()


def test_report_file_matches_stdout(tmp_path):
    path = tmp_path / "r.txt"
    out = run_cli("--report", str(path), "check", str(STRUCTURES / "a2.alg"))
    assert path.read_text() == out.stdout


def test_enumerate_counts():
    out = run_cli("enumerate", "--atoms", "2")
    assert out.returncode == 0
    assert "enumerate.total = 52" in out.stdout
    assert "enumerate.classification-chain = pass" in out.stdout


def test_enumerate_pipeline_small():
    out = run_cli("enumerate", "--atoms", "2", "--pipeline")
    assert out.returncode == 0
    assert out.stdout.count("= fail") == 0
    assert "pipeline.wa-0000 = pass" in out.stdout
