import csv
import json

import numpy as np
import pytest

from ranshare.cli import main


def test_run_preset(tmp_path, capsys):
    out = tmp_path / "run"
    assert main(["run", "--preset", "milan_s1", "--out", str(out)]) == 0
    captured = capsys.readouterr().out
    assert "fleet 35 vs 144 servers" in captured
    assert "config digest" in captured
    assert (out / "gpu_usage_milan_s1.csv").exists()
    assert (out / "metadata.json").exists()


def test_run_with_config_overlay(tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"name": "short", "horizon_weeks": 4}))
    out = tmp_path / "out"
    assert main(["run", "--preset", "milan_s2", "--config", str(config), "--out", str(out)]) == 0
    manifest = json.loads((out / "metadata.json").read_text())
    assert manifest["bundles"][0]["scenario"]["horizon_weeks"] == 4
    assert manifest["bundles"][0]["scenario"]["ran"]["growth_annual"] == 1.2


def test_run_invalid_config_exits_nonzero(tmp_path, capsys):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"ran": {"overhead": 2.0}}))
    assert main(["run", "--config", str(config), "--out", str(tmp_path / "x")]) == 1
    assert "ran.overhead" in capsys.readouterr().err


def test_sweep_command(tmp_path, capsys):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"horizon_weeks": 6, "sweep": {"k": [1.0, 2.0]}}))
    out = tmp_path / "sweep"
    assert main(["sweep", "--config", str(config), "--out", str(out)]) == 0
    rows = list(csv.reader((out / "llm_revenue.csv").open()))
    assert rows[0] == ["week", "rev_k1", "rev_k2"]


def test_catalog_list(capsys):
    assert main(["catalog", "list"]) == 0
    out = capsys.readouterr().out
    assert "ARS-111GL" in out
    assert "FlexRAN" in out
    assert "16000" in out


def test_ingest_trace_roundtrip(tmp_path, capsys):
    monday0 = 4 * 86400
    trace = tmp_path / "trace.csv"
    with trace.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["timestamp", "request_tokens", "response_tokens"])
        for h in range(2 * 168):
            writer.writerow([monday0 + 3600 * h, 60, 40])
    out = tmp_path / "profile.csv"
    assert main(["ingest-trace", "--in", str(trace), "--out", str(out)]) == 0
    assert "mean tokens/request 100.00" in capsys.readouterr().out
    from ranshare.profiles import DAILY_FRACTION, load_profile

    prof = load_profile(out, DAILY_FRACTION)
    assert np.allclose(prof.values, 1 / 24)


def test_ingest_trace_column_mapping(tmp_path):
    trace = tmp_path / "trace.csv"
    trace.write_text("Timestamp,Request tokens,Response tokens\n345600,10,30\n349200,20,40\n")
    out = tmp_path / "profile.csv"
    assert main([
        "ingest-trace", "--in", str(trace), "--out", str(out),
        "--timestamp-col", "Timestamp",
        "--request-tokens-col", "Request tokens",
        "--response-tokens-col", "Response tokens",
        "--tokens", "request",
    ]) == 0
    assert out.exists()


def test_missing_trace_file_fails(tmp_path, capsys):
    assert main(["ingest-trace", "--in", str(tmp_path / "nope.csv"), "--out", str(tmp_path / "o")]) == 1
    assert "error" in capsys.readouterr().err
