"""
Tests for the ltot command line
"""

import csv
import io
import json
from pathlib import Path

import jsonschema
import pytest

from ltot.cli import EXIT_CONFIG, EXIT_OK, main, parse_values
from ltot.errors import ConfigError

REPORT_SCHEMA = json.loads((Path(__file__).resolve().parents[1] / "schemas" / "report.v1.schema.json").read_text())


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_run_honest_unfair(capsys):
    code, out, _ = _run(capsys, "run", "--protocol", "unfair-lt-rot", "--trials", "200", "--seed", "1")
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["schema_version"] == "report.v1"
    (estimate,) = report["estimates"]
    assert estimate["stats"]["estimate"] == 1.0
    assert report["config"]["max_restarts"] == "unbounded"
    assert all(v["passed"] for v in report["verdicts"])


def test_run_attack_reports_prediction(capsys):
    code, out, _ = _run(capsys, "run", "--protocol", "cks10-rot", "--bob", "bob-parity",
                        "--trials", "200", "--seed", "2")
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["estimates"][0]["predicted"] == 1.0
    assert report["certificates"]


def test_unknown_protocol_flag(capsys):
    code, out, err = _run(capsys, "run", "--protocol", "foo")
    assert code == EXIT_CONFIG
    assert out == ""
    assert json.loads(err)["error"] == "usage_error"


def test_unknown_protocol_in_config(capsys, tmp_path):
    path = tmp_path / "run.yaml"
    path.write_text("protocol: foo\n")
    code, _, err = _run(capsys, "run", "--config", str(path))
    assert code == EXIT_CONFIG
    body = json.loads(err)
    assert body["error"] == "config_error"
    assert "foo" in body["detail"]


def test_strategy_for_wrong_family(capsys):
    code, _, err = _run(capsys, "run", "--protocol", "unfair-lt-rot", "--bob", "bob-parity", "--trials", "100")
    assert code == EXIT_CONFIG
    assert json.loads(err)["error"] == "precondition_failed"


def test_config_file_with_flag_override(capsys, tmp_path):
    path = tmp_path / "run.yaml"
    path.write_text("protocol: unfair-lt-rot\ntrials: 150\nseed: 4\nloss_rate: 0.3\n")
    code, out, _ = _run(capsys, "run", "--config", str(path), "--trials", "120")
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["config"]["trials"] == 120
    assert report["config"]["loss_rate"] == 0.3


def test_no_timestamp_output_is_reproducible(capsys, monkeypatch):
    monkeypatch.setattr("ltot.cli.FIXED_CLOCK", None)
    argv = ["run", "--protocol", "cks10-rot", "--trials", "100", "--seed", "5", "--loss-rate", "0.2",
            "--no-timestamp"]
    first = _run(capsys, *argv)[1]
    second = _run(capsys, *argv)[1]
    assert first == second
    assert json.loads(first)["generated_at"] == ""


def test_report_to_file_and_metrics(capsys, tmp_path):
    out = tmp_path / "report.csv"
    metrics = tmp_path / "metrics.prom"
    code, stdout, _ = _run(capsys, "run", "--protocol", "ideal-rot", "--trials", "100", "--format", "csv",
                           "--out", str(out), "--metrics-out", str(metrics))
    assert code == EXIT_OK
    assert stdout == ""
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert rows[0]["name"] == "honest correctness"
    assert "ltot_trials_total" in metrics.read_text()


def test_compose_corollary(capsys):
    code, out, _ = _run(capsys, "compose", "0.8536", "0.8536", "1", "0.5")
    assert code == EXIT_OK
    result = json.loads(out)
    assert result["eps_ot"] == pytest.approx(0.4268)
    assert result["fair"] is True


def test_compose_out_of_range(capsys):
    code, _, err = _run(capsys, "compose", "0.4", "0.5", "1", "0.5")
    assert code == EXIT_CONFIG
    assert json.loads(err)["error"] == "precondition_failed"


def test_compose_csv(capsys):
    code, out, _ = _run(capsys, "compose", "0.5", "0.5", "1", "0.5", "--format", "csv")
    assert code == EXIT_OK
    (row,) = csv.DictReader(io.StringIO(out))
    assert float(row["a_ot"]) == pytest.approx(0.75)


def test_sweep_loss_rate(capsys):
    code, out, _ = _run(capsys, "sweep", "loss_rate", "--values", "0,0.5", "--protocol", "unfair-lt-rot",
                        "--trials", "100", "--seed", "6")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [(r["dimension"], float(r["value"])) for r in rows] == [("loss_rate", 0.0), ("loss_rate", 0.5)]
    assert all(float(r["estimate"]) == 1.0 for r in rows)


def test_sweep_restart_budget(capsys):
    _, out, _ = _run(capsys, "sweep", "max_restarts", "--range", "0:1:1", "--protocol", "cks10-rot",
                     "--alice", "alice-lost-message", "--trials", "1000", "--seed", "7")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [float(r["predicted"]) for r in rows] == pytest.approx([0.75, 0.875])


def test_parse_values():
    assert parse_values("0.1, 0.2", None) == [0.1, 0.2]
    assert parse_values(None, "0:1:0.25") == [0.0, 0.25, 0.5, 0.75, 1.0]
    with pytest.raises(ConfigError):
        parse_values(None, None)
    with pytest.raises(ConfigError):
        parse_values(None, "1:0:0.5")


def test_list(capsys):
    code, out, _ = _run(capsys, "list")
    assert code == EXIT_OK
    listing = json.loads(out)
    assert listing["protocols"]["unfair-lt-rot"]["profile"] == {"A": 0.5, "B": 1.0}
    assert listing["protocols"]["role-switch"]["inner"] == ["unfair-lt-rot"]
    assert "bob-epr" in listing["strategies"]


def test_selftest_needs_enough_trials(capsys):
    code, _, err = _run(capsys, "selftest", "--trials", "10")
    assert code == EXIT_CONFIG
    assert json.loads(err)["error"] == "config_error"


def test_role_switch_over_ideal_rot(capsys):
    code, out, _ = _run(capsys, "run", "--protocol", "role-switch", "--inner", "ideal-rot", "--trials", "200",
                        "--seed", "8")
    assert code == EXIT_OK
    assert json.loads(out)["estimates"][0]["stats"]["estimate"] == 1.0


# report schema

def test_run_report_matches_schema(capsys):
    _, out, _ = _run(capsys, "run", "--protocol", "cks10-rot", "--bob", "bob-parity", "--trials", "100",
                     "--seed", "3", "--loss-rate", "0.2")
    report = json.loads(out)
    jsonschema.Draft7Validator(REPORT_SCHEMA).validate(report)
    assert report["certificates"]


def test_sweep_report_matches_schema(capsys):
    _, out, _ = _run(capsys, "sweep", "wcf", "--values", "0.6,0.9", "--protocol", "wcf-black-box",
                     "--alice", "alice-force-coin", "--trials", "100", "--format", "json")
    report = json.loads(out)
    jsonschema.Draft7Validator(REPORT_SCHEMA).validate(report)
    assert report["config"]["sweep"] == {"dimension": "wcf", "values": [0.6, 0.9]}


def test_sweep_takes_format_from_config(capsys, tmp_path):
    path = tmp_path / "sweep.yaml"
    path.write_text("protocol: unfair-lt-rot\ntrials: 100\nformat: json\n")
    code, out, _ = _run(capsys, "sweep", "loss_rate", "--values", "0,0.4", "--config", str(path))
    assert code == EXIT_OK
    report = json.loads(out)
    jsonschema.Draft7Validator(REPORT_SCHEMA).validate(report)
    assert len(report["estimates"]) == 2
