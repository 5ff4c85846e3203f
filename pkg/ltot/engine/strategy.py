"""
Strategies, protocol descriptors, ideal functionalities and the per-party
context handed to strategy programs.

A strategy program is a generator function ``program(ctx)``: it yields
``Send`` / ``Receive`` / ``Invoke`` actions, receives incoming messages (or
functionality results) as the value of ``yield``, returns its output
declaration, and raises ``PartyAbort`` to abort.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Callable, Generator, Mapping, Optional, Sequence, Tuple, TYPE_CHECKING

import numpy as np

from ..quantum import DensityMatrix, Povm, StateVector, UnitaryOp
from .messages import Party

if TYPE_CHECKING:
    from ..schemas.domain import CheatProfile
    from .runner import Execution

Program = Callable[["PartyContext"], Generator[Any, Any, Any]]


@dataclass(frozen=True)
class Strategy:
    name: str
    role: Party
    program: Program
    honest: bool = True
    # attack metadata: what the attacker is after and what it should achieve
    target: Optional[str] = None            # "b" (Alice attacks) or "parity" (Bob attacks)
    predicted: Optional[float] = None
    certificates: Tuple[Any, ...] = ()


class Functionality(ABC):
    """Ideal functionality both parties invoke (coin flip, OT, ROT black boxes)."""

    name: str = "functionality"

    @abstractmethod
    def resolve(self, alice_request: Any, bob_request: Any,
                rng: np.random.Generator) -> Tuple[Any, Any, str]:
        """Return (result for the Alice role, result for the Bob role, transcript summary)."""


@dataclass(frozen=True)
class ProtocolDescriptor:
    name: str
    kind: str                                   # rot | ot | wcf
    alice_program: Callable[..., Program]       # program factory for the Alice role (sender)
    bob_program: Callable[..., Program]         # program factory for the Bob role (receiver)
    first_mover: Party = Party.BOB
    round_bound: int = 4                        # messages and invocations allowed per attempt
    profile: Optional["CheatProfile"] = None
    params: Mapping[str, Any] = field(default_factory=dict)
    inner: Tuple["ProtocolDescriptor", ...] = ()
    alice_view: Optional[Callable[[int], DensityMatrix]] = None
    quantum: bool = False

    def honest_alice(self, **kwargs) -> Strategy:
        return Strategy(f"{self.name}:honest", Party.ALICE, self.alice_program(**kwargs))

    def honest_bob(self, **kwargs) -> Strategy:
        return Strategy(f"{self.name}:honest", Party.BOB, self.bob_program(**kwargs))

    def honest(self, party: Party, **kwargs) -> Strategy:
        return self.honest_alice(**kwargs) if party is Party.ALICE else self.honest_bob(**kwargs)

    @property
    def functionalities(self) -> Tuple[Functionality, ...]:
        """Every ideal functionality this protocol or its inner protocols may invoke."""
        own = (self.params["box"],) if "box" in self.params else ()
        return own + tuple(f for inner in self.inner for f in inner.functionalities)


class PartyContext:
    """A party's handle on the execution: its randomness, its qubits, its notes."""

    def __init__(self, party: Party, rng: np.random.Generator, execution: "Execution"):
        self.party = party
        self.rng = rng
        self._execution = execution
        self.restarts_seen = 0

    def random_bit(self) -> int:
        return int(self.rng.integers(2))

    def random_bits(self, k: int) -> Tuple[int, ...]:
        return tuple(int(v) for v in self.rng.integers(2, size=k))

    def prepare(self, state: StateVector) -> Tuple[int, ...]:
        return self._execution.register.prepare(self.party, state)

    def apply(self, u: UnitaryOp, handle: Sequence[int]):
        self._execution.register.apply(self.party, u, handle)

    def measure(self, povm: Povm, handle: Sequence[int]) -> int:
        result = self._execution.register.measure(self.party, povm, handle)
        self._execution.record_local(self.party, "measure", povm.name,
                                     {"outcome": result.outcome,
                                      "probabilities": [round(p, 12) for p in result.probabilities]})
        return result.outcome

    def discard(self, handle: Sequence[int]):
        self._execution.register.require(self.party, handle)
        self._execution.register.discard(handle)

    def discard_all(self):
        self._execution.register.discard_owned(self.party)

    def holds(self, handle: Sequence[int]) -> bool:
        return self._execution.register.holds(self.party, handle)

    def note(self, label: str, **values: Any):
        """Record private bookkeeping (e.g. per-attempt random draws) in the transcript."""
        self._execution.record_local(self.party, "note", label, dict(values))

    def on_restart(self):
        self.restarts_seen += 1
