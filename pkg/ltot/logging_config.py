import contextvars
import json
import logging
import logging.config
import os
from datetime import datetime, timezone
from typing import Any, Dict, Optional

import yaml

from .config import LOG_CONFIG

# Context variable for the current run id (seed-derived, set by the trial runner / CLI)
run_id_var = contextvars.ContextVar("run_id", default=None)

_RESERVED = {
    "name", "msg", "args", "levelname", "levelno", "pathname", "filename", "module",
    "lineno", "funcName", "created", "msecs", "relativeCreated", "thread", "threadName",
    "processName", "process", "getMessage", "exc_info", "exc_text", "stack_info",
    "taskName", "component", "message", "asctime",
}


def get_run_id() -> Optional[str]:
    """Get the current run id from context"""
    return run_id_var.get()


def log_simulation_event(event_type: str, message: str, level: int = logging.INFO, **kwargs):
    """Log simulation events with structured data"""
    component = kwargs.pop("component", "engine")
    logger = logging.getLogger(f"ltot.{component}")
    if not logger.isEnabledFor(level):
        return
    logger.log(level, message, extra={
        "event_type": event_type,
        "component": component,
        **kwargs
    })


class JsonFormatter(logging.Formatter):
    """JSON formatter with structured fields"""

    def format(self, record: logging.LogRecord) -> str:
        log_entry: Dict[str, Any] = {
            "timestamp": datetime.now(timezone.utc).isoformat().replace("+00:00", "Z"),
            "level": record.levelname,
            "logger": record.name,
            "msg": record.getMessage(),
            "run_id": get_run_id(),
            "component": getattr(record, "component", "ltot"),
        }

        if record.exc_info:
            log_entry["exception"] = self.formatException(record.exc_info)

        for key, value in record.__dict__.items():
            if key not in _RESERVED and key not in log_entry:
                log_entry[key] = value

        return json.dumps(log_entry, default=str)


def _fallback_config(log_level: str, log_format: str) -> Dict[str, Any]:
    return {
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": {
            "json": {"()": JsonFormatter},
            "text": {
                "format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
                "datefmt": "%Y-%m-%d %H:%M:%S"
            }
        },
        "handlers": {
            "console": {
                "class": "logging.StreamHandler",
                "level": log_level,
                "formatter": log_format,
                "stream": "ext://sys.stderr"
            }
        },
        "loggers": {
            "ltot": {
                "level": log_level,
                "handlers": ["console"],
                "propagate": False
            }
        },
        "root": {
            "level": "WARNING",
            "handlers": ["console"]
        }
    }


def setup_logging(log_level: Optional[str] = None, log_format: Optional[str] = None,
                  config_path: Optional[str] = None) -> Dict[str, Any]:
    """Setup logging configuration from YAML file or environment"""
    log_format = log_format or os.getenv("LOG_FORMAT", "text")
    log_level = (log_level or os.getenv("LOG_LEVEL", "WARNING")).upper()
    config_path = config_path or LOG_CONFIG

    config = None
    if config_path and os.path.exists(config_path):
        try:
            with open(config_path, "r") as f:
                config = yaml.safe_load(f)
        except Exception as e:
            logging.getLogger("ltot").warning("Could not load %s: %s", config_path, e)

    if not config:
        config = _fallback_config(log_level, log_format)

    # Environment / flag overrides win over the YAML file
    for handler in config.get("handlers", {}).values():
        if "formatter" in handler:
            handler["formatter"] = log_format
        handler["level"] = log_level
    for logger in config.get("loggers", {}).values():
        logger["level"] = log_level

    logging.config.dictConfig(config)
    return config
