"""Command line behaviour: exit codes, formats, byte determinism."""

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from ckq import cli

GOLDEN = Path(__file__).parent / "golden"


def run_cli(args, **env_extra):
    env = dict(os.environ)
    env.update(env_extra)
    return subprocess.run([sys.executable, "-m", "ckq.cli", *args],
                          capture_output=True, text=True, env=env)


def test_relations_json_matches_golden(tmp_path):
    out = tmp_path / "rel.json"
    rc = cli.main(["relations", "--n", "3", "--j", "1,1",
                   "--format", "json", "--out", str(out)])
    assert rc == 0
    assert out.read_bytes() == (GOLDEN / "relations_n3_trivial.json").read_bytes()


def test_relations_latex_matches_golden(tmp_path):
    out = tmp_path / "rel.tex"
    rc = cli.main(["relations", "--n", "3", "--j", "1,1",
                   "--format", "latex", "--out", str(out)])
    assert rc == 0
    assert out.read_bytes() == (GOLDEN / "relations_n3_trivial.tex").read_bytes()


def test_rmatrix_json_matches_golden(tmp_path):
    out = tmp_path / "rm.json"
    rc = cli.main(["rmatrix", "--n", "3", "--j", "iota,iota",
                   "--format", "json", "--out", str(out)])
    assert rc == 0
    assert out.read_bytes() == (GOLDEN / "rmatrix_n3_iotaiota.json").read_bytes()


def test_output_bytes_stable_across_hash_seeds():
    a = run_cli(["relations", "--n", "3", "--j", "iota,1", "--format", "json"],
                PYTHONHASHSEED="1")
    b = run_cli(["relations", "--n", "3", "--j", "iota,1", "--format", "json"],
                PYTHONHASHSEED="4242")
    assert a.returncode == 0 and b.returncode == 0
    assert a.stdout == b.stdout
    assert a.stdout.endswith("\n")


def test_dual_output_stable_across_hash_seeds():
    a = run_cli(["dual", "--n", "3", "--j", "iota,iota", "--format", "json"],
                PYTHONHASHSEED="2")
    b = run_cli(["dual", "--n", "3", "--j", "iota,iota", "--format", "json"],
                PYTHONHASHSEED="77")
    assert a.returncode == 0
    assert a.stdout == b.stdout
    doc = json.loads(a.stdout)
    assert set(doc) == {"config", "pattern", "tables"}
    assert set(doc["tables"]) == {"upper", "lower"}
    # triangular family: upper functionals vanish below the diagonal
    for row in doc["tables"]["upper"]:
        i, jj = row["functional"]
        assert i <= jj
    for row in doc["tables"]["lower"]:
        i, jj = row["functional"]
        assert i >= jj


def test_signature_length_mismatch_exits_2():
    r = run_cli(["verify", "--n", "4", "--j", "iota,1", "--suite", "ybe"])
    assert r.returncode == 2
    assert "slots" in r.stderr


def test_bad_signature_token_exits_2():
    r = run_cli(["relations", "--n", "3", "--j", "iota,zeta"])
    assert r.returncode == 2


def test_unknown_suite_exits_2():
    r = run_cli(["verify", "--n", "3", "--suite", "nonsense"])
    assert r.returncode == 2
    assert "unknown suite" in r.stderr


def test_step_cap_reports_inconclusive_exit_3():
    r = run_cli(["verify", "--n", "3", "--j", "1,1", "--suite", "antipode",
                 "--step-cap", "1"])
    assert r.returncode == 3
    assert "INCONCLUSIVE" in r.stdout


def test_verify_fast_suites_pass_exit_0():
    r = run_cli(["verify", "--n", "3", "--j", "iota,1",
                 "--suite", "ybe,cubic,projector,classical,coassoc,counit"])
    assert r.returncode == 0
    lines = [ln for ln in r.stdout.splitlines() if ln.strip()]
    assert len(lines) == 6
    assert all("PASS" in ln for ln in lines)


def test_verify_json_format_and_jobs_agree():
    serial = run_cli(["verify", "--n", "3", "--j", "iota,iota",
                      "--suite", "ybe,exchange,pairing", "--format", "json"])
    pooled = run_cli(["verify", "--n", "3", "--j", "iota,iota",
                      "--suite", "ybe,exchange,pairing", "--format", "json",
                      "--jobs", "3"])
    assert serial.returncode == 0 and pooled.returncode == 0
    assert serial.stdout == pooled.stdout
    doc = json.loads(serial.stdout)
    assert [r["suite"] for r in doc["results"]] == ["ybe", "exchange", "pairing"]
    assert all(r["status"] == "PASS" for r in doc["results"])


def test_suite_all_expands_in_fixed_order():
    names = cli._parse_suites("all")
    assert names == list(cli.SUITES)
    assert cli._parse_suites("cubic,all")[:1] == ["cubic"]
    with pytest.raises(cli.UsageError):
        cli._parse_suites("")


def test_classical_command_runs_and_reports():
    r = run_cli(["classical", "--n", "4", "--j", "1,iota,1",
                 "--samples", "20", "--seed", "7", "--format", "json"])
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["report"]["orthogonal"] == 20
    assert doc["report"]["products_orthogonal"] == doc["report"]["product_pairs"]


def test_classical_seed_changes_nothing_about_verdict_but_is_recorded():
    a = run_cli(["classical", "--n", "3", "--j", "iota,1", "--samples", "5",
                 "--seed", "1", "--format", "json"])
    b = run_cli(["classical", "--n", "3", "--j", "iota,1", "--samples", "5",
                 "--seed", "2", "--format", "json"])
    assert a.returncode == b.returncode == 0
    assert json.loads(a.stdout)["report"]["seed"] == 1
    assert json.loads(b.stdout)["report"]["seed"] == 2


def test_relations_text_has_one_line_per_relation():
    r = run_cli(["relations", "--n", "3", "--j", "iota,iota"])
    assert r.returncode == 0
    lines = r.stdout.splitlines()
    assert lines[0].startswith("# n=3")
    assert "relations=" in lines[0]
    count = int(lines[0].rsplit("=", 1)[1])
    body = [ln for ln in lines[1:] if ln.strip()]
    assert len(body) == count
    assert all(ln.endswith("= 0") for ln in body)
    assert all(ln.startswith("[rtt]") or ln.startswith("[orth]") for ln in body)


def test_missing_subcommand_exits_2():
    r = run_cli([])
    assert r.returncode == 2
