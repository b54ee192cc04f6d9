import io
import json
import os
import subprocess
import sys

import pytest

from quandlebench.cli import run
from quandlebench.quandle import dihedral_quandle
from quandlebench.report import Report, emit, recheck


def cli(*argv, fmt="json"):
    buf = io.StringIO()
    code, report = run(list(argv) + ["--format", fmt], out=buf)
    return code, report, buf.getvalue()


def test_main1_m3():
    code, rep, out = cli("verify", "main1", "--m", "3")
    assert code == 0 and rep.outcome == "verified"
    assert len(rep.payload["isomorphism"]) == 8
    assert Report.loads(out) == rep


def test_q6_budget_report():
    code, rep, _ = cli("build", "twist-spun", "--m", "6", "--budget", "3000")
    assert code == 2 and rep.outcome == "budget_exceeded"
    assert rep.payload["budget"] == 3000 and rep.payload["classes_seen"] > 0


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("QF_BUDGET", "2500")
    code, rep, _ = cli("build", "twist-spun", "--m", "6")
    assert code == 2 and rep.payload["budget"] == 2500
    monkeypatch.setenv("QF_BUDGET", "lots")
    assert cli("build", "twist-spun", "--m", "3")[0] == 3


@pytest.mark.parametrize("argv", [
    ["build", "twist-spun", "--m", "7"],
    ["build", "schlafli", "--m", "7"],
    ["build", "cell", "--cells", "120"],
    ["verify", "main1", "--m", "6"],
    ["verify", "main2", "--m", "1"],
    ["certify-infinite", "--m", "7"],
    ["frobnicate"],
    ["enum", "--file", "/nonexistent.qdl"],
])
def test_input_errors(argv):
    assert cli(*argv)[0] == 3


def test_iso_identity(tmp_path):
    f = tmp_path / "t.tbl"
    f.write_text(dihedral_quandle(5).dumps(), encoding="utf-8")
    code, rep, _ = cli("iso", str(f), str(f))
    assert code == 0 and rep.payload["isomorphism"] == [0, 1, 2, 3, 4]


def test_iso_refuted_has_counterexample(tmp_path):
    from quandlebench.quandle import trivial_quandle
    a, b = tmp_path / "a.tbl", tmp_path / "b.tbl"
    a.write_text(dihedral_quandle(3).dumps(), encoding="utf-8")
    b.write_text(trivial_quandle(3).dumps(), encoding="utf-8")
    code, rep, _ = cli("iso", str(a), str(b))
    assert code == 1 and rep.payload["counterexample"]


def test_iso_malformed(tmp_path):
    bad = tmp_path / "bad.tbl"
    bad.write_text('{"name": "x", "order": 2, "elements": ["0", "1"], "table": [[0, 0], [0, 1]]}',
                   encoding="utf-8")
    assert cli("iso", str(bad), str(bad))[0] == 3
    bad.write_text("not json", encoding="utf-8")
    assert cli("iso", str(bad), str(bad))[0] == 3


def test_enum_file(tmp_path):
    f = tmp_path / "q3.qdl"
    f.write_text("# Q_3\n< a, c | (a*c)*a = c, c *^3 a = c >\n", encoding="utf-8")
    code, rep, _ = cli("enum", "--file", str(f))
    assert code == 0 and rep.payload["table"]["order"] == 8
    f.write_text("< a, c | (a*c)*a = >", encoding="utf-8")
    assert cli("enum", "--file", str(f))[0] == 3


def test_text_format_renders_grid():
    code, rep, out = cli("build", "schlafli", "--m", "2", fmt="text")
    assert code == 0
    assert "outcome: verified" in out
    grid = [line for line in out.splitlines() if "|" in line]
    assert len(grid) == 4  # header plus three rows


def test_q5_structured_table():
    code, rep, out = cli("build", "twist-spun", "--m", "5")
    d = json.loads(out)
    assert d["payload"]["table"]["order"] == 120
    assert len(d["payload"]["table"]["table"]) == 120
    assert set(d) == {"command", "outcome", "payload", "elapsed_ms"}


def test_main2_reports():
    code, rep, _ = cli("verify", "main2", "--m", "4")
    assert code == 0 and rep.payload["extension"]["deck_order"] == 4
    code, rep, _ = cli("verify", "main2", "--m", "2")
    assert code == 1 and rep.payload["counterexample"]["deck_order"] == 1


def test_schlafli_six_is_eisenstein_model():
    code, rep, _ = cli("build", "schlafli", "--m", "6")
    assert code == 0 and rep.payload["model"]["order"] is None


def test_certify_infinite():
    code, rep, _ = cli("certify-infinite", "--m", "6")
    assert code == 0 and rep.payload["certificate"]["translation"] == "2"


COMMANDS = [
    ["build", "schlafli", "--m", "3"],
    ["build", "schlafli", "--m", "2", "--model", "algebraic"],
    ["build", "cell", "--cells", "16"],
    ["build", "twist-spun", "--m", "4"],
    ["verify", "main1", "--m", "4"],
    ["verify", "main2", "--m", "3"],
    ["verify", "lemma", "--m", "3"],
    ["certify-infinite", "--m", "6"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(a))
def test_round_trip_and_recheck_in_process(argv):
    code, rep, out = cli(*argv)
    assert code == 0
    parsed = Report.loads(out)
    assert parsed == rep
    assert Report.loads(emit(parsed, "json")) == parsed
    assert recheck(parsed)


def test_fresh_process_recheck(tmp_path):
    env = dict(os.environ)
    for argv in (["verify", "main1", "--m", "5"], ["verify", "main2", "--m", "5"], ["verify", "lemma", "--m", "5"]):
        path = tmp_path / "report.json"
        done = subprocess.run([sys.executable, "-m", "quandlebench", *argv, "--format", "json"],
                              capture_output=True, text=True, env=env, check=False)
        assert done.returncode == 0
        path.write_text(done.stdout, encoding="utf-8")
        again = subprocess.run([sys.executable, "-m", "quandlebench", "recheck", str(path), "--format", "json"],
                               capture_output=True, text=True, env=env, check=False)
        assert again.returncode == 0, again.stdout
        assert json.loads(again.stdout)["payload"]["rechecked"] is True


def test_tampered_witness_fails_recheck():
    code, rep, _ = cli("verify", "main1", "--m", "3")
    iso = rep.payload["isomorphism"]
    iso[0], iso[1] = iso[1], iso[0]
    assert not recheck(rep)
