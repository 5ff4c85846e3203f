"""
Wire-level types of a two-party execution: parties, messages, actions,
channel configuration and outcomes.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field


class Party(str, Enum):
    ALICE = "alice"
    BOB = "bob"

    @property
    def peer(self) -> "Party":
        return Party.BOB if self is Party.ALICE else Party.ALICE


# Messages

@dataclass(frozen=True)
class ClassicalBits:
    bits: Tuple[int, ...]
    kind = "classical"

    def summary(self) -> str:
        return "".join(str(b) for b in self.bits)


@dataclass(frozen=True)
class QuantumPayload:
    """Handle to factors of the engine's global state, owned by the sender."""
    handle: Tuple[int, ...]
    kind = "quantum"

    def summary(self) -> str:
        return "factors=" + ",".join(str(f) for f in self.handle)


@dataclass(frozen=True)
class LossDeclaration:
    kind = "loss"

    def summary(self) -> str:
        return "declared lost"


Message = Union[ClassicalBits, QuantumPayload, LossDeclaration]


def bits(*values: int) -> ClassicalBits:
    return ClassicalBits(tuple(int(v) for v in values))


# Actions yielded by strategy programs

@dataclass(frozen=True)
class Send:
    message: Message


@dataclass(frozen=True)
class Receive:
    pass


@dataclass(frozen=True)
class Invoke:
    """
    Call an ideal functionality in one of its roles; resolved once both
    roles are invoked. The result goes to whoever invoked that role.
    """
    functionality: Any
    role: Party
    request: Any = None


RECEIVE = Receive()
Action = Union[Send, Receive, Invoke]


class Restart(Exception):
    """Thrown into both parties' programs when a quantum message is lost."""


class PartyAbort(Exception):
    """Raised by a strategy program to abort the execution."""


class ChannelConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    loss_rate: float = Field(0.0, ge=0.0, le=1.0, description="Probability a quantum message is genuinely lost")
    classical_loss_rate: float = Field(0.0, ge=0.0, lt=1.0, description="Probability one classical transmission is lost (resent)")
    adversarial_loss_allowed: bool = Field(False, description="May a party declare loss of a received quantum message at will")
    max_restarts: Optional[int] = Field(None, ge=0, description="Restart cap; None means unbounded")


@dataclass(frozen=True)
class ProtocolOutcome:
    alice_output: Any = None
    bob_output: Any = None
    aborted_by: Optional[Party] = None
    reason: str = ""

    def __post_init__(self):
        populated = self.alice_output is not None and self.bob_output is not None
        if populated == (self.aborted_by is not None):
            raise ValueError("an outcome is either completed with both outputs or aborted by one party")

    @classmethod
    def completed_with(cls, alice_output: Any, bob_output: Any) -> "ProtocolOutcome":
        return cls(alice_output=alice_output, bob_output=bob_output)

    @classmethod
    def aborted(cls, by: Party, reason: str) -> "ProtocolOutcome":
        return cls(aborted_by=by, reason=reason)

    @property
    def completed(self) -> bool:
        return self.aborted_by is None

    def output_of(self, party: Party) -> Any:
        return self.alice_output if party is Party.ALICE else self.bob_output

    @property
    def label(self) -> str:
        return "completed" if self.completed else f"aborted_by_{self.aborted_by.value}"
