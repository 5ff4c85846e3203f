from typing import Any, Dict, Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from ..config import DEFAULT_SEED, DEFAULT_TRIALS
from ..errors import ConfigError

UNBOUNDED = "unbounded"


class RunConfig(BaseModel):
    """One experiment: a protocol, a strategy per role and the channel it runs over."""
    model_config = ConfigDict(extra="forbid")

    protocol: str = "cks10-rot"
    alice: str = "honest"
    bob: str = "honest"
    trials: int = Field(DEFAULT_TRIALS, ge=1)
    seed: int = Field(DEFAULT_SEED, ge=0)
    loss_rate: float = Field(0.0, ge=0.0, le=1.0)
    classical_loss_rate: float = Field(0.0, ge=0.0, lt=1.0)
    adversarial_loss: bool = True
    max_restarts: Optional[int] = Field(None, ge=0)
    declared_losses: int = Field(0, ge=0)
    wcf_a: float = Field(0.5, ge=0.5, le=1.0)
    wcf_b: float = Field(0.5, ge=0.5, le=1.0)
    inner: Optional[str] = None
    amplitude: Optional[float] = Field(None, gt=0.0, le=1.0)
    rot_x: Optional[float] = Field(None, ge=0.5, le=1.0)
    rot_y: Optional[float] = Field(None, ge=0.5, le=1.0)
    format: str = Field("json", pattern="^(json|csv)$")
    out: Optional[str] = None
    parallel: Optional[int] = Field(None, ge=1)
    no_timestamp: bool = False
    metrics_out: Optional[str] = None

    @field_validator("max_restarts", mode="before")
    @classmethod
    def _parse_unbounded(cls, value: Union[int, str, None]):
        if value is None or (isinstance(value, str) and value.lower() == UNBOUNDED):
            return None
        return value

    @field_validator("protocol", "inner")
    @classmethod
    def _known_protocol(cls, value: Optional[str]):
        from ..protocols.registry import protocol_names
        if value is not None and value not in protocol_names():
            raise ValueError(f"unknown protocol '{value}'")
        return value

    @field_validator("alice", "bob")
    @classmethod
    def _known_strategy(cls, value: str):
        from ..adversaries.registry import strategy_names
        if value not in strategy_names():
            raise ValueError(f"unknown strategy '{value}'")
        return value

    def echo(self) -> Dict[str, Any]:
        """Config as written into reports; output locations are left out."""
        data = self.model_dump(exclude={"out", "metrics_out", "no_timestamp", "parallel"})
        data["max_restarts"] = UNBOUNDED if self.max_restarts is None else self.max_restarts
        return data


def load_run_config(path: Optional[str] = None, overrides: Optional[Dict[str, Any]] = None) -> RunConfig:
    """Read a YAML config file, then apply command-line overrides (flags win)."""
    data: Dict[str, Any] = {}
    if path:
        try:
            with open(path, "r") as f:
                data = yaml.safe_load(f) or {}
        except (OSError, yaml.YAMLError) as e:
            raise ConfigError(f"cannot read config {path}: {e}")
        if not isinstance(data, dict):
            raise ConfigError(f"config {path} must be a mapping")
    data.update({k: v for k, v in (overrides or {}).items() if v is not None})
    try:
        return RunConfig(**data)
    except ValidationError as e:
        raise ConfigError("; ".join(f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()))
