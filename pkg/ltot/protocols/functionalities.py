"""
Ideal functionalities: the weak coin flip black box, ideal OT and a
parameterized Random-OT box.

A party asks to cheat by invoking with ``CHEAT`` as its request.
"""

from dataclasses import dataclass
from typing import Any, Optional, Tuple

import numpy as np

from ..engine.strategy import Functionality
from ..schemas.domain import CheatProfile, WcfSpec

CHEAT = "cheat"


class WcfBlackBox(Functionality):
    """Weak coin flip; Alice prefers c=0, Bob prefers c=1. Never aborts."""

    name = "wcf"

    def __init__(self, spec: WcfSpec):
        self.spec = spec

    def resolve(self, alice_request: Any, bob_request: Any, rng: np.random.Generator):
        alice_cheats = alice_request == CHEAT
        bob_cheats = bob_request == CHEAT
        if alice_cheats and not bob_cheats:
            c = 0 if rng.random() < self.spec.a_wcf else 1
        elif bob_cheats and not alice_cheats:
            c = 1 if rng.random() < self.spec.b_wcf else 0
        else:
            c = int(rng.integers(2))
        return c, c, f"c={c}"


class IdealOt(Functionality):
    """Bob receives x_b; Alice receives nothing."""

    name = "ot"

    def resolve(self, alice_request: Any, bob_request: Any, rng: np.random.Generator):
        x0, x1 = alice_request
        b = bob_request
        if {x0, x1, b} - {0, 1}:
            raise ValueError("ideal OT takes bits")
        return None, (x1 if b else x0), "delivered"


@dataclass(frozen=True)
class RotDraw:
    """What one side of the Random-OT box returns; ``leak`` is set only for a successful cheat."""
    first: int
    second: int
    leak: Optional[int] = None


class IdealRot(Functionality):
    """
    Random-OT box with cheating profile (alpha, beta).

    Honest outputs are uniform with x_b correct. A cheating Alice is told b
    with probability 2*alpha - 1, a cheating Bob is told x_{1-b} with
    probability 2*beta - 1, so the best guess of the target succeeds with
    probability exactly alpha (resp. beta).
    """

    name = "rot"

    def __init__(self, profile: CheatProfile):
        self.profile = profile

    def resolve(self, alice_request: Any, bob_request: Any, rng: np.random.Generator) -> Tuple[RotDraw, RotDraw, str]:
        x0, x1, b = (int(v) for v in rng.integers(2, size=3))
        alice_leak = bob_leak = None
        if alice_request == CHEAT and rng.random() < 2 * self.profile.A - 1:
            alice_leak = b
        if bob_request == CHEAT and rng.random() < 2 * self.profile.B - 1:
            bob_leak = x0 if b else x1
        xb = x1 if b else x0
        return RotDraw(x0, x1, alice_leak), RotDraw(b, xb, bob_leak), "drawn"
