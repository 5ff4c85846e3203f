"""
Random-OT protocols arbitrated by a weak coin flip.

``prototype_rot`` leaks one party's secret depending on the coin and is kept
to exhibit that leak. ``combined_rot`` uses the coin to pick which of two
Random-OT protocols with mirrored cheating profiles is run.
"""

from typing import Optional

from ..engine.messages import RECEIVE, Invoke, Party, Send, bits
from ..engine.strategy import ProtocolDescriptor
from ..errors import PreconditionError
from ..schemas.domain import CheatProfile, WcfSpec
from .base import ReceiverOutput, SenderOutput, expect_bits
from .functionalities import CHEAT, WcfBlackBox
from .reductions import role_switch


def combined_prediction(force: float, x: float, y: float) -> float:
    """Cheating probability of a party that forces its favorable branch with probability ``force``."""
    return force * (x - y) + y


# prototype

def prototype_alice(box: WcfBlackBox, cheat: bool = False):
    """Alice's side of the prototype; returns (output, view) where view is b or None."""
    def play(ctx):
        c = yield Invoke(box, Party.ALICE, CHEAT if cheat else None)
        x0, x1 = ctx.random_bits(2)
        ctx.note("draw", x0=x0, x1=x1)
        if c == 0:
            b = expect_bits((yield RECEIVE), 1).bits[0]
            yield Send(bits(x1 if b else x0))
            return SenderOutput(x0, x1), b
        yield Send(bits(x0, x1))
        return SenderOutput(x0, x1), None
    return play


def prototype_bob(box: WcfBlackBox, cheat: bool = False):
    """Bob's side of the prototype; returns (output, view) where view is x0 xor x1 or None."""
    def play(ctx):
        c = yield Invoke(box, Party.BOB, CHEAT if cheat else None)
        b = ctx.random_bit()
        ctx.note("draw", b=b)
        if c == 0:
            yield Send(bits(b))
            xb = expect_bits((yield RECEIVE), 1).bits[0]
            return ReceiverOutput(b, xb), None
        x0, x1 = expect_bits((yield RECEIVE), 2).bits
        return ReceiverOutput(b, x1 if b else x0), x0 ^ x1
    return play


def prototype_rot(wcf: Optional[WcfSpec] = None) -> ProtocolDescriptor:
    wcf = wcf or WcfSpec()
    box = WcfBlackBox(wcf)

    def alice_program():
        def program(ctx):
            output, _ = yield from prototype_alice(box)(ctx)
            return output
        return program

    def bob_program():
        def program(ctx):
            output, _ = yield from prototype_bob(box)(ctx)
            return output
        return program

    return ProtocolDescriptor(
        name="prototype-rot",
        kind="rot",
        alice_program=alice_program,
        bob_program=bob_program,
        first_mover=Party.ALICE,
        round_bound=3,
        # curious parties learn on their favorable coin and guess otherwise
        profile=CheatProfile(A=(1 + wcf.a_wcf) / 2, B=(1 + wcf.b_wcf) / 2),
        params={"family": "prototype", "box": box, "wcf": wcf},
    )


# combination

def combined_rot(wcf: WcfSpec, rot_xy: ProtocolDescriptor, rot_yx: ProtocolDescriptor) -> ProtocolDescriptor:
    if rot_xy.profile is None or rot_yx.profile is None:
        raise PreconditionError("both branches need a declared cheating profile")
    x, y = rot_xy.profile.A, rot_xy.profile.B
    if x < y:
        raise PreconditionError(f"branch profile ({x}, {y}) must satisfy x >= y")
    if abs(rot_yx.profile.A - y) > 1e-12 or abs(rot_yx.profile.B - x) > 1e-12:
        raise PreconditionError(f"second branch profile must be ({y}, {x})")
    box = WcfBlackBox(wcf)

    def alice_program():
        def program(ctx):
            c = yield Invoke(box, Party.ALICE)
            branch = rot_xy if c == 0 else rot_yx
            return (yield from branch.alice_program()(ctx))
        return program

    def bob_program():
        def program(ctx):
            c = yield Invoke(box, Party.BOB)
            branch = rot_xy if c == 0 else rot_yx
            return (yield from branch.bob_program()(ctx))
        return program

    return ProtocolDescriptor(
        name="combined-rot",
        kind="rot",
        alice_program=alice_program,
        bob_program=bob_program,
        first_mover=Party.ALICE,
        round_bound=1 + max(rot_xy.round_bound, rot_yx.round_bound),
        profile=CheatProfile(A=combined_prediction(wcf.a_wcf, x, y), B=combined_prediction(wcf.b_wcf, x, y)),
        params={"family": "combined", "box": box, "wcf": wcf, "x": x, "y": y},
        inner=(rot_xy, rot_yx),
        quantum=rot_xy.quantum or rot_yx.quantum,
    )


def combined_from_base(wcf: WcfSpec, base: ProtocolDescriptor) -> ProtocolDescriptor:
    """Combination built from one Random-OT and its role switch."""
    if base.profile is None:
        raise PreconditionError(f"{base.name} has no declared cheating profile")
    switched = role_switch(base)
    if base.profile.A >= base.profile.B:
        return combined_rot(wcf, base, switched)
    return combined_rot(wcf, switched, base)
