from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from .domain import CompositionResult, TrialStats


class Certificate(BaseModel):
    """An exact check computed from the quantum core, not sampled."""
    name: str
    value: float
    expected: float
    tolerance: float = 1e-9
    passed: bool

    @classmethod
    def check(cls, name: str, value: float, expected: float, tolerance: float = 1e-9) -> "Certificate":
        return cls(name=name, value=float(value), expected=float(expected), tolerance=tolerance,
                   passed=abs(float(value) - float(expected)) <= tolerance)


class Estimate(BaseModel):
    name: str
    protocol: str
    stats: TrialStats
    predicted: Optional[float] = None
    within_band: Optional[bool] = None
    params: Dict[str, Any] = Field(default_factory=dict)


class AttackReport(BaseModel):
    attack: str
    protocol: str
    predicted: float
    empirical: TrialStats
    certificates: List[Certificate] = Field(default_factory=list)
    within_band: bool
    status: str = Field(..., pattern="^(PASSED|FAILED)$")


class Verdict(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class Report(BaseModel):
    schema_version: str
    version: str
    generated_at: str
    config: Dict[str, Any]
    estimates: List[Estimate] = Field(default_factory=list)
    certificates: List[Certificate] = Field(default_factory=list)
    compositions: List[CompositionResult] = Field(default_factory=list)
    verdicts: List[Verdict] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)
