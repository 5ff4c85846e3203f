from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator


class WcfSpec(BaseModel):
    """Weak coin flip black box: Alice wants c=0, Bob wants c=1."""
    model_config = ConfigDict(frozen=True)

    a_wcf: float = Field(0.5, ge=0.5, le=1.0, description="Probability cheating Alice forces c=0")
    b_wcf: float = Field(0.5, ge=0.5, le=1.0, description="Probability cheating Bob forces c=1")

    @computed_field
    @property
    def bias(self) -> float:
        return max(self.a_wcf, self.b_wcf) - 0.5

    @property
    def fair(self) -> bool:
        return abs(self.a_wcf - self.b_wcf) <= 1e-12


class CheatProfile(BaseModel):
    """Maximum cheating probabilities (A for Alice, B for Bob) of a protocol."""
    model_config = ConfigDict(frozen=True)

    A: float = Field(..., ge=0.5, le=1.0)
    B: float = Field(..., ge=0.5, le=1.0)

    @computed_field
    @property
    def bias(self) -> float:
        return max(self.A, self.B) - 0.5

    def swapped(self) -> "CheatProfile":
        return CheatProfile(A=self.B, B=self.A)


class TrialStats(BaseModel):
    label: str = "success"
    n: int = Field(..., ge=1)
    successes: int = Field(..., ge=0)
    estimate: float = Field(..., ge=0.0, le=1.0)
    ci_low: float = Field(..., ge=0.0, le=1.0)
    ci_high: float = Field(..., ge=0.0, le=1.0)
    seed: int

    @model_validator(mode="after")
    def _interval_contains_estimate(self):
        if self.successes > self.n:
            raise ValueError("successes exceed trial count")
        if not self.ci_low <= self.estimate <= self.ci_high:
            raise ValueError("confidence interval must contain the estimate")
        return self


class CompositionResult(BaseModel):
    a_wcf: float
    b_wcf: float
    a_rot: float
    b_rot: float
    a_ot: float
    b_ot: float
    eps_ot: float
    eps_rot: float
    fair: bool
    bias_bound_holds: bool
    strictly_improves: Optional[bool] = None
