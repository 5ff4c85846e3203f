"""
Output records shared by the protocols and the restart helper.
"""

from dataclasses import dataclass
from typing import Any, Callable, Generator

from ..engine.messages import ClassicalBits, Party, PartyAbort, ProtocolOutcome, QuantumPayload, Restart
from ..engine.strategy import PartyContext


@dataclass(frozen=True)
class SenderOutput:
    x0: int
    x1: int

    def bit(self, index: int) -> int:
        return self.x1 if index else self.x0

    @property
    def parity(self) -> int:
        return self.x0 ^ self.x1


@dataclass(frozen=True)
class ReceiverOutput:
    b: int
    xb: int


@dataclass(frozen=True)
class CoinOutput:
    c: int


@dataclass(frozen=True)
class OtInputs:
    x0: int
    x1: int
    b: int

    def __post_init__(self):
        if {self.x0, self.x1, self.b} - {0, 1}:
            raise ValueError("OT inputs are bits")

    @property
    def expected(self) -> int:
        return self.x1 if self.b else self.x0


@dataclass(frozen=True)
class RotOutput:
    alice: SenderOutput
    bob: ReceiverOutput

    @property
    def correct(self) -> bool:
        return self.bob.xb == self.alice.bit(self.bob.b)

    @classmethod
    def of(cls, outcome: ProtocolOutcome) -> "RotOutput":
        return cls(outcome.output_of(Party.ALICE), outcome.output_of(Party.BOB))


Attempt = Callable[[PartyContext], Generator[Any, Any, Any]]


def restartable(ctx: PartyContext, attempt: Attempt):
    """Run ``attempt`` until it completes; a Restart discards this party's qubits and starts over."""
    while True:
        try:
            return (yield from attempt(ctx))
        except Restart:
            ctx.discard_all()


def expect_quantum(message: Any) -> QuantumPayload:
    if not isinstance(message, QuantumPayload):
        raise PartyAbort(f"expected a quantum message, got {type(message).__name__}")
    return message


def expect_bits(message: Any, length: int) -> ClassicalBits:
    if not isinstance(message, ClassicalBits) or len(message.bits) != length:
        raise PartyAbort(f"expected {length} classical bit(s)")
    if set(message.bits) - {0, 1}:
        raise PartyAbort("classical payload is not a bit string")
    return message
