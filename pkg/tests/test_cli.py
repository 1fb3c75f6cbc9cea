import json

import pytest

from voalog import cli, suites
from voalog.suites import Check


def test_verify_logint_passes(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert cli.main(["verify", "--suite", "logint", "--report", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["summary"] == {"pass": 4, "fail": 0, "skipped": 0}
    assert "timing" not in doc


def test_verify_report_is_stable(tmp_path):
    texts = []
    for i in range(2):
        out = tmp_path / f"r{i}.csv"
        assert cli.main(["verify", "--suite", "wpp", "--p", "3", "--pprime", "1", "--cutoff", "4",
                         "--format", "csv", "--report", str(out)]) == 0
        texts.append(out.read_bytes())
    assert texts[0] == texts[1]
    assert texts[0].startswith(b"id,status,paper_ref,witness_sha256\n")


def test_verify_failure_exit_code(monkeypatch, tmp_path):
    bad = Check("logint.bad", "always fails", "-", lambda cfg: (False, {"why": "test"}))
    monkeypatch.setattr(suites, "LOGINT_CHECKS", [bad])
    assert cli.main(["verify", "--suite", "logint", "--report", str(tmp_path / "r.json")]) == 1


def test_cutoff_too_small_is_skipped(tmp_path):
    out = tmp_path / "r.json"
    assert cli.main(["verify", "--suite", "triplet", "--p", "4", "--cutoff", "2", "--report", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["summary"]["skipped"] > 0 and doc["summary"]["fail"] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--suite", "nonsense"],
        ["verify", "--suite", "triplet", "--p", "1"],
        ["verify", "--suite", "super", "--p", "4", "--pprime", "1"],
        ["verify", "--suite", "logint", "--cocycle", "other"],
        ["verify", "--suite", "logint", "--jobs", "0"],
        ["verify", "--suite", "logint", "--format", "xml"],
        ["basis", "--sector", "affine:0,0", "--weight", "0"],
        ["basis", "--sector", "bogus(2):0", "--weight", "0"],
        ["apply", "--op", "{not json", "--to", "[]"],
    ],
)
def test_config_errors_exit_2(argv):
    try:
        code = cli.main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 2


def test_jobs_env_fallback(monkeypatch, tmp_path):
    monkeypatch.setenv("VOALOG_JOBS", "abc")
    assert cli.main(["verify", "--suite", "logint", "--report", str(tmp_path / "r.json")]) == 2
    monkeypatch.setenv("VOALOG_JOBS", "2")
    assert suites.default_jobs() == 2
    assert cli.main(["verify", "--suite", "logint", "--report", str(tmp_path / "r.json")]) == 0


def test_basis_command(capsys):
    assert cli.main(["basis", "--sector", "triplet(2):0", "--weight", "2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["dim"] == len(doc["basis"]) > 0


def test_basis_affine_with_charge(capsys):
    assert cli.main(["basis", "--sector", "affine:-3,1", "--weight=-1/3", "--charge", "1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["dim"] == 1


def test_apply_virasoro(capsys):
    op = json.dumps({"case": "triplet(2)", "kind": "virasoro", "n": 0})
    to = json.dumps({"coeff": "1", "bosons": [], "point": ["-1/2"], "fermions": []})
    assert cli.main(["apply", "--op", op, "--to", to]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out == [{"coeff": "1/1", "bosons": [], "point": ["-1/2"], "fermions": []}]
