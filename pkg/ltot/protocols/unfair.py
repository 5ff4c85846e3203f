"""
Unfair qubit Random-OT, tolerant to loss.

Bob sends H^b|d>; Alice applies X^x0 Z^x1 and returns it, which equals
H^b|x_b xor d> up to phase; Bob measures in {H^b|d>, H^b|d xor 1>}. The
qubit Alice sees is I/2 whatever b is, so loss gives her nothing; Bob can
learn both bits by sending half of an EPR pair instead.
"""

from itertools import product

from ..engine.messages import RECEIVE, Party, QuantumPayload, Send, bits
from ..engine.strategy import ProtocolDescriptor
from ..quantum import apply_unitary, outcome_probabilities
from ..quantum.gates import decoding_povm, encoded_qubit, pauli_encoding, unfair_alice_view
from ..schemas.domain import CheatProfile
from .base import ReceiverOutput, SenderOutput, expect_bits, expect_quantum, restartable

NAME = "unfair-lt-rot"


def _alice_attempt(ctx):
    message = expect_quantum((yield RECEIVE))
    x0, x1 = ctx.random_bits(2)
    ctx.note("draw", x0=x0, x1=x1)
    ctx.apply(pauli_encoding(x0, x1), message.handle)
    yield Send(message)
    expect_bits((yield RECEIVE), 1)
    return SenderOutput(x0, x1)


def _bob_attempt(ctx):
    b, d = ctx.random_bits(2)
    ctx.note("draw", b=b, d=d)
    handle = ctx.prepare(encoded_qubit(b, d))
    yield Send(QuantumPayload(handle))
    returned = expect_quantum((yield RECEIVE))
    xb = ctx.measure(decoding_povm(b, d), returned.handle)
    yield Send(bits(0))
    return ReceiverOutput(b, xb)


def _alice():
    def program(ctx):
        return (yield from restartable(ctx, _alice_attempt))
    return program


def _bob():
    def program(ctx):
        return (yield from restartable(ctx, _bob_attempt))
    return program


def unfair_lt_rot() -> ProtocolDescriptor:
    return ProtocolDescriptor(
        name=NAME,
        kind="rot",
        alice_program=_alice,
        bob_program=_bob,
        first_mover=Party.BOB,
        round_bound=3,
        profile=CheatProfile(A=0.5, B=1.0),
        params={"family": "unfair"},
        alice_view=unfair_alice_view,
        quantum=True,
    )


def decoding_table():
    """Probability that Bob decodes x_b correctly, for every (b, d, x0, x1)."""
    table = {}
    for b, d, x0, x1 in product((0, 1), repeat=4):
        returned = apply_unitary(encoded_qubit(b, d), pauli_encoding(x0, x1), [0])
        probabilities = outcome_probabilities(returned, decoding_povm(b, d))
        table[(b, d, x0, x1)] = probabilities[x1 if b else x0]
    return table
