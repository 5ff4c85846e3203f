"""
Tests for errors, structured logging, metrics and run configs
"""

import json
import logging

import pytest

from ltot.errors import ConfigError, PreconditionError, UnknownProtocolError
from ltot.logging_config import JsonFormatter, log_simulation_event, run_id_var, setup_logging
from ltot.metrics import simulation_metrics
from ltot.schemas.run_config import RunConfig, load_run_config


def test_error_bodies():
    assert PreconditionError("n too small").to_dict() == {"error": "precondition_failed", "detail": "n too small"}
    assert ConfigError("bad flag", code="usage_error").to_dict()["error"] == "usage_error"
    assert str(UnknownProtocolError("unknown protocol 'foo'")) == "unknown protocol 'foo'"
    assert ConfigError("x").exit_code == 1


def test_json_formatter_carries_structured_fields():
    record = logging.LogRecord("ltot.engine", logging.INFO, __file__, 1, "Run finished", None, None)
    record.event_type = "run_completed"
    record.component = "engine"
    record.restarts = 2
    token = run_id_var.set("cks10-rot-7")
    try:
        entry = json.loads(JsonFormatter().format(record))
    finally:
        run_id_var.reset(token)
    assert entry["msg"] == "Run finished"
    assert entry["run_id"] == "cks10-rot-7"
    assert entry["event_type"] == "run_completed"
    assert entry["restarts"] == 2
    assert entry["component"] == "engine"


def test_setup_logging_falls_back_without_yaml(tmp_path):
    config = setup_logging("debug", "json", config_path=str(tmp_path / "missing.yaml"))
    assert config["handlers"]["console"]["formatter"] == "json"
    assert config["loggers"]["ltot"]["level"] == "DEBUG"
    setup_logging("warning", "text", config_path=str(tmp_path / "missing.yaml"))


def test_simulation_events_reach_the_component_logger(caplog):
    logger = logging.getLogger("ltot.analysis")
    logger.addHandler(caplog.handler)
    try:
        with caplog.at_level(logging.INFO, logger="ltot.analysis"):
            log_simulation_event("criterion_checked", "Criterion checked", component="analysis", passed=True)
    finally:
        logger.removeHandler(caplog.handler)
    record = next(r for r in caplog.records if r.name == "ltot.analysis")
    assert record.event_type == "criterion_checked"
    assert record.passed is True


def test_metrics_exposition(tmp_path):
    simulation_metrics.record_execution("unit-test", "completed", 3)
    simulation_metrics.increment_restarts("unit-test", 2)
    text = simulation_metrics.get_metrics().decode()
    assert 'ltot_trials_total{protocol="unit-test",outcome="completed"}' in text
    assert "ltot_restarts_total" in text
    path = tmp_path / "metrics.prom"
    simulation_metrics.write_textfile(str(path))
    assert "ltot_trial_rounds" in path.read_text()


def test_run_config_defaults_and_unbounded():
    config = RunConfig(max_restarts="unbounded")
    assert config.max_restarts is None
    assert config.adversarial_loss is True
    assert RunConfig(max_restarts=3).echo()["max_restarts"] == 3
    assert "out" not in config.echo()


def test_run_config_rejects_unknown_fields_and_names():
    with pytest.raises(ConfigError):
        load_run_config(None, {"trails": 10})
    with pytest.raises(ConfigError):
        load_run_config(None, {"alice": "alice-magic"})
    with pytest.raises(ConfigError):
        load_run_config(None, {"loss_rate": 1.5})


def test_run_config_file_must_be_a_mapping(tmp_path):
    path = tmp_path / "run.yaml"
    path.write_text("- cks10-rot\n")
    with pytest.raises(ConfigError):
        load_run_config(str(path))
    with pytest.raises(ConfigError):
        load_run_config(str(tmp_path / "absent.yaml"))
