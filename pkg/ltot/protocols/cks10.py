"""
Qutrit Random-OT.

Bob sends Alice half of a|bb> + sqrt(1-a^2)|22>; Alice applies the phase
(-1)^x0 on |0>, (-1)^x1 on |1> and returns it; Bob measures
{|phi_b><phi_b|, 1 - |phi_b><phi_b|} and reads x_b from the outcome. Bob
closes every attempt with a one-bit "nothing lost" report. Any lost
quantum message restarts the protocol with fresh randomness.
"""

from functools import partial
from itertools import product

from ..engine.messages import RECEIVE, Party, QuantumPayload, Send, bits
from ..quantum import apply_unitary, outcome_probabilities
from ..quantum.gates import SQRT_HALF, alice_view_cks10, phi_projector_povm, phi_state, qutrit_phase
from ..schemas.domain import CheatProfile
from ..engine.strategy import ProtocolDescriptor
from .base import ReceiverOutput, SenderOutput, expect_bits, expect_quantum, restartable

NAME = "cks10-rot"


def alice_helstrom_bound(amplitude: float = SQRT_HALF) -> float:
    return 0.5 + amplitude ** 2 / 2


def honest_error(amplitude: float = SQRT_HALF) -> float:
    return (1 - 2 * amplitude ** 2) ** 2 / 2


def _alice(amplitude: float):
    def attempt(ctx):
        message = expect_quantum((yield RECEIVE))
        x0, x1 = ctx.random_bits(2)
        ctx.note("draw", x0=x0, x1=x1)
        ctx.apply(qutrit_phase(x0, x1), message.handle)
        yield Send(message)
        expect_bits((yield RECEIVE), 1)
        return SenderOutput(x0, x1)

    def program(ctx):
        return (yield from restartable(ctx, attempt))
    return program


def _bob(amplitude: float):
    def attempt(ctx):
        b = ctx.random_bit()
        ctx.note("draw", b=b)
        kept, sent = ctx.prepare(phi_state(b, amplitude))
        yield Send(QuantumPayload((sent,)))
        returned = expect_quantum((yield RECEIVE))
        xb = ctx.measure(phi_projector_povm(b, amplitude), (kept,) + returned.handle)
        yield Send(bits(0))
        return ReceiverOutput(b, xb)

    def program(ctx):
        return (yield from restartable(ctx, attempt))
    return program


def cks10_rot(amplitude: float = SQRT_HALF) -> ProtocolDescriptor:
    if not 0.0 < amplitude <= 1.0:
        raise ValueError("amplitude must lie in (0, 1]")
    return ProtocolDescriptor(
        name=NAME,
        kind="rot",
        alice_program=lambda: _alice(amplitude),
        bob_program=lambda: _bob(amplitude),
        first_mover=Party.BOB,
        round_bound=3,
        profile=CheatProfile(A=alice_helstrom_bound(amplitude), B=1.0),
        params={"family": "cks10", "amplitude": amplitude},
        alice_view=partial(alice_view_cks10, amplitude=amplitude),
        quantum=True,
    )


def decoding_table(amplitude: float = SQRT_HALF):
    """Probability that Bob reads x_b correctly, for every (b, x0, x1)."""
    table = {}
    for b, x0, x1 in product((0, 1), repeat=3):
        returned = apply_unitary(phi_state(b, amplitude), qutrit_phase(x0, x1), [1])
        probabilities = outcome_probabilities(returned, phi_projector_povm(b, amplitude))
        table[(b, x0, x1)] = probabilities[x1 if b else x0]
    return table
