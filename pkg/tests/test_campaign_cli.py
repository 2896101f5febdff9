from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import pytest

from expdioph.campaign import (
    CampaignConfig,
    CampaignReport,
    CheckResult,
    report_emit,
    run_campaign,
    verify_exceptional_lists,
)
from expdioph.cli import EXIT_FALSIFIED, EXIT_IO, EXIT_PASS, EXIT_USAGE, main, read_config_file
from expdioph.fixtures import family_identities, verify_exceptional_lists as fixture_checks


def _report() -> CampaignReport:
    return CampaignReport(
        "search",
        {"a": 3, "b": 10, "c": 13, "z_max": 10, "workers": 1},
        {"solutions": 2},
        [CheckResult("one", True), CheckResult("two", False, "detail, with comma")],
        duration_s=0.5,
    )


def test_config_validation() -> None:
    with pytest.raises(ValueError):
        CampaignConfig("nope")
    with pytest.raises(ValueError):
        CampaignConfig("search", {"a": 3})
    with pytest.raises(ValueError):
        CampaignConfig("bounds", workers=0)


def test_report_round_trip() -> None:
    r = _report()
    data = json.loads(report_emit(r, "json"))
    back = CampaignReport.from_dict(data)
    assert back == r
    assert data["falsifications"] == ["two"]
    assert data["status"] == "FAIL"
    data["falsifications"] = []
    with pytest.raises(ValueError):
        CampaignReport.from_dict(data)


def test_csv_rows_and_text_overall_line() -> None:
    r = _report()
    rows = list(csv.reader(io.StringIO(report_emit(r, "csv").decode())))
    assert len(rows) == len(r.checks) + 1
    text = report_emit(r, "text").decode()
    assert text.count("OVERALL") == 1
    assert "OVERALL FAIL" in text
    with pytest.raises(ValueError):
        report_emit(r, "xml")


def test_exceptional_list_examples() -> None:
    assert 2**13 + 89 == 91**2
    assert family_identities(5)[1] == (2, 7, 31, 2, 33, 2)
    assert 2**7 + 31**2 == 33**2
    assert 4930**2 - 30**5 == 4900
    assert all(c.passed for c in fixture_checks())
    report = verify_exceptional_lists()
    assert report.passed
    assert report.falsifications == []


def test_search_mode_lists_two_solutions() -> None:
    report = run_campaign(CampaignConfig("search", {"a": 3, "b": 10, "c": 13, "z_max": 10}))
    assert report.counts["solutions"] == 2
    assert report.passed


def test_artifacts_are_deterministic(tmp_path: Path) -> None:
    outs = []
    for name in ("one", "two"):
        cfg = CampaignConfig("closures", {"z_max_vii": 20, "sqrt13_kmax": 20}, output_path=tmp_path / name)
        run_campaign(cfg)
        outs.append({p.name: p.read_bytes() for p in sorted((tmp_path / name).glob("*.jsonl"))})
    assert outs[0] == outs[1]
    assert set(outs[0]) == {"besi.jsonl", "sqrt13_gap.jsonl", "delta_even.jsonl"}
    summary = json.loads((tmp_path / "one" / "summary.json").read_text())
    assert summary["status"] == "PASS"


def test_sieve_v_campaign_counts(tmp_path: Path) -> None:
    report = run_campaign(CampaignConfig("sieve-v", output_path=tmp_path))
    assert report.counts["list1"] == 114
    assert report.counts["matches"] == 0
    lines = (tmp_path / "list1.jsonl").read_text().splitlines()
    assert len(lines) == 114
    assert set(json.loads(lines[0])) == {"z", "n_prime", "t"}


def test_cli_exit_codes(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["search", "--a", "3", "--b", "10", "--c", "13", "--z-max", "10"]) == EXIT_PASS
    assert "OVERALL PASS" in capsys.readouterr().out
    assert main(["pillai", "--a", "13", "--b", "3", "--c", "10", "--x-max", "5", "--format", "json"]) == EXIT_PASS
    assert json.loads(capsys.readouterr().out)["counts"]["solutions"] == 2
    assert main(["search", "--a", "3"]) == EXIT_USAGE
    assert main(["search", "--a", "6", "--b", "4", "--c", "13", "--z-max", "3"]) == EXIT_USAGE
    assert main(["sieve", "c13"]) == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == EXIT_USAGE
    assert main(["report", "--in", str(tmp_path / "missing.json")]) == EXIT_IO
    capsys.readouterr()

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(_report().to_dict()))
    assert main(["report", "--in", str(bad), "--format", "csv"]) == EXIT_FALSIFIED


def test_cli_config_file_and_precedence(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# search run\na = 3\nb = 10\nc = 13\nz-max = 2\n")
    assert read_config_file(cfg) == {"a": "3", "b": "10", "c": "13", "z_max": "2"}
    assert main(["search", "--config", str(cfg), "--format", "json"]) == EXIT_PASS
    assert json.loads(capsys.readouterr().out)["counts"]["solutions"] == 1
    # flags win over the file
    assert main(["search", "--config", str(cfg), "--z-max", "5", "--format", "json"]) == EXIT_PASS
    assert json.loads(capsys.readouterr().out)["counts"]["solutions"] == 2
    broken = tmp_path / "broken.cfg"
    broken.write_text("just words\n")
    assert main(["search", "--config", str(broken)]) == EXIT_USAGE


def test_cli_workers_env(monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]) -> None:
    monkeypatch.setenv("EXPDIOPH_WORKERS", "3")
    assert main(["bounds", "--format", "json"]) in (EXIT_PASS, EXIT_FALSIFIED)
    assert json.loads(capsys.readouterr().out)["inputs"]["workers"] == 3
    main(["bounds", "--workers", "2", "--format", "json"])
    assert json.loads(capsys.readouterr().out)["inputs"]["workers"] == 2


def test_cli_bounds_show(capsys: pytest.CaptureFixture[str]) -> None:
    main(["bounds", "--show"])
    out = capsys.readouterr().out
    assert "K2" in out and "10459" in out
    assert out.count("OVERALL") == 1


def test_cli_sieve_resume(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    ckpt = tmp_path / "ck.json"
    args = ["sieve", "c13", "--case", "vi", "--z-max", "300", "--checkpoint", str(ckpt), "--format", "json"]
    main(args + ["--n-prime", "2"])
    capsys.readouterr()
    main(args + ["--resume"])
    resumed = json.loads(capsys.readouterr().out)
    main(["sieve", "c13", "--case", "vi", "--z-max", "300", "--format", "json"])
    fresh = json.loads(capsys.readouterr().out)
    assert resumed["counts"] == fresh["counts"]
    assert fresh["status"] == "PASS"
