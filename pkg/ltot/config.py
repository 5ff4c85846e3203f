"""
Configuration module for the loss-tolerant OT simulator
"""

import os
from pathlib import Path
from typing import Optional


def env_bool(key: str, default: bool = False) -> bool:
    """Get boolean value from environment variable"""
    value = os.getenv(key, str(default)).lower()
    return value in ("true", "1", "yes", "on")


def _read_version_from_repo(default: str = "dev") -> str:
    try:
        # repo root: ltot/.. (one parent up from the package)
        version_file = Path(__file__).resolve().parents[1] / "VERSION"
        v = version_file.read_text(encoding="utf-8").strip()
        if v:
            return v
    except Exception:
        pass
    return os.getenv("LTOT_VERSION", default)


LTOT_VERSION = _read_version_from_repo()

# Numerics
TOLERANCE = float(os.getenv("LTOT_TOLERANCE", "1e-9"))

# Trial defaults
DEFAULT_TRIALS = int(os.getenv("LTOT_DEFAULT_TRIALS", "10000"))
DEFAULT_SEED = int(os.getenv("LTOT_DEFAULT_SEED", "7"))
PARALLEL = int(os.getenv("LTOT_PARALLEL", "1"))

# Engine guards
MAX_ROUNDS = int(os.getenv("LTOT_MAX_ROUNDS", "100000"))
CLASSICAL_RESEND_LIMIT = int(os.getenv("LTOT_CLASSICAL_RESEND_LIMIT", "1000"))

# Verdict policy
SIGMA_BAND = float(os.getenv("LTOT_SIGMA_BAND", "3.0"))
CONFIDENCE_LEVEL = float(os.getenv("LTOT_CONFIDENCE_LEVEL", "0.95"))

# Reports
FIXED_CLOCK: Optional[str] = os.getenv("LTOT_FIXED_CLOCK") or None
REPORT_SCHEMA_VERSION = "report.v1"

# Logging configuration
LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING")
LOG_FORMAT = os.getenv("LOG_FORMAT", "text")
LOG_CONFIG = os.getenv("LOG_CONFIG", str(Path(__file__).resolve().parents[1] / "LOGGING.yaml"))
LOG_ENGINE_EVENTS: bool = env_bool("LTOT_LOG_ENGINE_EVENTS", False)

# Published numbers used as defaults by the CLI and the acceptance suite
PUBLISHED_WCF_FORCE = 0.8536
PUBLISHED_OT_BIAS = 0.4268
