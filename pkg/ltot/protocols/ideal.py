"""
Descriptors around the ideal functionalities.
"""

from typing import Optional

from ..engine.messages import Invoke, Party
from ..engine.strategy import ProtocolDescriptor
from ..schemas.domain import CheatProfile, WcfSpec
from .base import CoinOutput, ReceiverOutput, SenderOutput
from .functionalities import IdealOt, IdealRot, WcfBlackBox


def _coin_program(box: WcfBlackBox, role: Party, request=None):
    def program(ctx):
        c = yield Invoke(box, role, request)
        return CoinOutput(c)
    return program


def wcf_black_box(spec: Optional[WcfSpec] = None) -> ProtocolDescriptor:
    spec = spec or WcfSpec()
    box = WcfBlackBox(spec)
    return ProtocolDescriptor(
        name="wcf-black-box",
        kind="wcf",
        alice_program=lambda: _coin_program(box, Party.ALICE),
        bob_program=lambda: _coin_program(box, Party.BOB),
        first_mover=Party.ALICE,
        round_bound=1,
        profile=CheatProfile(A=spec.a_wcf, B=spec.b_wcf),
        params={"family": "wcf", "box": box, "wcf": spec},
    )


def ideal_ot() -> ProtocolDescriptor:
    box = IdealOt()

    def alice_program(x0: Optional[int] = None, x1: Optional[int] = None):
        def program(ctx):
            inputs = (x0, x1) if x0 is not None and x1 is not None else ctx.random_bits(2)
            yield Invoke(box, Party.ALICE, inputs)
            return SenderOutput(*inputs)
        return program

    def bob_program(b: Optional[int] = None):
        def program(ctx):
            choice = ctx.random_bit() if b is None else b
            xb = yield Invoke(box, Party.BOB, choice)
            return ReceiverOutput(choice, xb)
        return program

    return ProtocolDescriptor(
        name="ideal-ot",
        kind="ot",
        alice_program=alice_program,
        bob_program=bob_program,
        first_mover=Party.ALICE,
        round_bound=1,
        profile=CheatProfile(A=0.5, B=0.5),
        params={"family": "ideal-ot", "box": box},
    )


def ideal_rot(profile: Optional[CheatProfile] = None) -> ProtocolDescriptor:
    profile = profile or CheatProfile(A=0.5, B=0.5)
    box = IdealRot(profile)

    def alice_program():
        def program(ctx):
            draw = yield Invoke(box, Party.ALICE)
            return SenderOutput(draw.first, draw.second)
        return program

    def bob_program():
        def program(ctx):
            draw = yield Invoke(box, Party.BOB)
            return ReceiverOutput(draw.first, draw.second)
        return program

    return ProtocolDescriptor(
        name="ideal-rot",
        kind="rot",
        alice_program=alice_program,
        bob_program=bob_program,
        first_mover=Party.ALICE,
        round_bound=1,
        profile=profile,
        params={"family": "ideal-rot", "box": box},
    )
