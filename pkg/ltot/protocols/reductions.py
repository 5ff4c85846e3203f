"""
Protocol transformers between OT and Random-OT.

* ``rot_from_ot``: both parties pick uniform inputs and run the OT.
* ``ot_from_rot``: run the Random-OT, then derandomize with two classical
  announcements. Bob sends a permutation (p0, p1) of Alice's slots, (0, 1)
  when his random b equals his choice and (1, 0) when it does not; Alice
  sends the flip mask between her permuted random bits and her inputs.
* ``role_switch``: run the Random-OT with roles exchanged plus one message
  from Alice; turns a cheating profile (alpha, beta) into (beta, alpha).
"""

from typing import Optional, Tuple

from ..engine.messages import RECEIVE, PartyAbort, Send, bits
from ..engine.strategy import ProtocolDescriptor
from ..errors import PreconditionError
from .base import ReceiverOutput, SenderOutput, expect_bits


def _require(descriptor: ProtocolDescriptor, kind: str):
    if descriptor.kind != kind:
        raise PreconditionError(f"{descriptor.name} is a {descriptor.kind} protocol, expected {kind}")


# derandomization, as pure functions over the announced bits

def match_permutation(random_b: int, b: int) -> Tuple[int, int]:
    return (0, 1) if random_b == b else (1, 0)


def permute(random_bits: Tuple[int, int], permutation: Tuple[int, int]) -> Tuple[int, int]:
    return random_bits[permutation[0]], random_bits[permutation[1]]


def flip_mask(permuted: Tuple[int, int], inputs: Tuple[int, int]) -> Tuple[int, int]:
    return permuted[0] ^ inputs[0], permuted[1] ^ inputs[1]


def derandomized_bit(random_xb: int, mask: Tuple[int, int], b: int) -> int:
    return random_xb ^ mask[b]


def derandomize(x0: int, x1: int, b: int, random_sender: SenderOutput,
                random_receiver: ReceiverOutput) -> Tuple[SenderOutput, ReceiverOutput]:
    """Outputs of both parties after derandomizing one Random-OT instance."""
    permutation = match_permutation(random_receiver.b, b)
    mask = flip_mask(permute((random_sender.x0, random_sender.x1), permutation), (x0, x1))
    return SenderOutput(x0, x1), ReceiverOutput(b, derandomized_bit(random_receiver.xb, mask, b))


def rot_from_ot(ot: ProtocolDescriptor) -> ProtocolDescriptor:
    _require(ot, "ot")

    def alice_program():
        def program(ctx):
            x0, x1 = ctx.random_bits(2)
            ctx.note("inputs", x0=x0, x1=x1)
            out = yield from ot.alice_program(x0, x1)(ctx)
            return SenderOutput(out.x0, out.x1)
        return program

    def bob_program():
        def program(ctx):
            b = ctx.random_bit()
            ctx.note("inputs", b=b)
            out = yield from ot.bob_program(b)(ctx)
            return ReceiverOutput(out.b, out.xb)
        return program

    return ProtocolDescriptor(
        name="rot-from-ot",
        kind="rot",
        alice_program=alice_program,
        bob_program=bob_program,
        first_mover=ot.first_mover,
        round_bound=ot.round_bound,
        profile=ot.profile,
        params={"family": "rot-from-ot"},
        inner=(ot,),
        quantum=ot.quantum,
    )


def ot_from_rot(rot: ProtocolDescriptor) -> ProtocolDescriptor:
    _require(rot, "rot")

    def alice_program(x0: Optional[int] = None, x1: Optional[int] = None):
        def program(ctx):
            inputs = (x0, x1) if x0 is not None and x1 is not None else ctx.random_bits(2)
            drawn = yield from rot.alice_program()(ctx)
            announcement = expect_bits((yield RECEIVE), 2)
            if sorted(announcement.bits) != [0, 1]:
                raise PartyAbort("match announcement is not a permutation")
            permuted = permute((drawn.x0, drawn.x1), announcement.bits)
            yield Send(bits(*flip_mask(permuted, inputs)))
            return SenderOutput(*inputs)
        return program

    def bob_program(b: Optional[int] = None):
        def program(ctx):
            choice = ctx.random_bit() if b is None else b
            drawn = yield from rot.bob_program()(ctx)
            yield Send(bits(*match_permutation(drawn.b, choice)))
            mask = expect_bits((yield RECEIVE), 2)
            return ReceiverOutput(choice, derandomized_bit(drawn.xb, mask.bits, choice))
        return program

    return ProtocolDescriptor(
        name="ot-from-rot",
        kind="ot",
        alice_program=alice_program,
        bob_program=bob_program,
        first_mover=rot.first_mover,
        round_bound=rot.round_bound + 2,
        profile=rot.profile,
        params={"family": "ot-from-rot"},
        inner=(rot,),
        quantum=rot.quantum,
    )


# role switch

def role_switch_outputs(b: int, x0: int, x1: int, d: int) -> Tuple[SenderOutput, ReceiverOutput]:
    """Outer outputs from inner outputs (x0, x1 at Bob, b, x_b at Alice) and Alice's pad d."""
    xb = x1 if b else x0
    return SenderOutput(d, d ^ b), ReceiverOutput(x0 ^ x1, d ^ xb ^ x0)


def role_switch(rot: ProtocolDescriptor) -> ProtocolDescriptor:
    _require(rot, "rot")

    def alice_program():
        def program(ctx):
            inner = yield from rot.bob_program()(ctx)
            d = ctx.random_bit()
            ctx.note("pad", d=d)
            yield Send(bits(d ^ inner.xb))
            return SenderOutput(d, d ^ inner.b)
        return program

    def bob_program():
        def program(ctx):
            inner = yield from rot.alice_program()(ctx)
            padded = expect_bits((yield RECEIVE), 1)
            return ReceiverOutput(inner.x0 ^ inner.x1, padded.bits[0] ^ inner.x0)
        return program

    return ProtocolDescriptor(
        name="role-switch",
        kind="rot",
        alice_program=alice_program,
        bob_program=bob_program,
        first_mover=rot.first_mover.peer,
        round_bound=rot.round_bound + 1,
        profile=rot.profile.swapped() if rot.profile else None,
        params={"family": "role-switch"},
        inner=(rot,),
        quantum=rot.quantum,
    )
