"""
Cheating strategies, each paired with the success probability it should
achieve and the exact certificates backing that value.

An attack program returns an ``AttackOutput`` whose ``guess`` is scored
against the honest party's realized secret: Bob's b for Alice attacks,
Alice's x0 xor x1 for Bob attacks.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Any, Optional, Tuple

import numpy as np

from ..engine.messages import RECEIVE, Invoke, LossDeclaration, Party, QuantumPayload, Send, bits
from ..engine.strategy import ProtocolDescriptor, Strategy
from ..errors import PreconditionError, UnknownStrategyError
from ..protocols.base import expect_bits, expect_quantum, restartable
from ..protocols.cks10 import alice_helstrom_bound
from ..protocols.functionalities import CHEAT
from ..protocols.wcf_based import combined_prediction, prototype_alice, prototype_bob
from ..quantum import apply_unitary, gram_deviation, helstrom, tensor_power, trace_distance
from ..quantum.gates import (
    BELL_LABELS, PHI_PLUS_QUBITS, PHI_PLUS_QUTRITS, SQRT_HALF, Z3, alice_view_cks10,
    bell_after_encoding, bell_povm, parity_povm, pauli_encoding, qutrit_phase, unfair_alice_view,
)
from ..schemas.report import Certificate

TARGET_B = "b"
TARGET_PARITY = "parity"
TARGET_COIN = "coin"


@dataclass(frozen=True)
class AttackOutput:
    guess: int
    output: Any = None
    recovered: Optional[Tuple[int, ...]] = None


def _require_family(descriptor: Optional[ProtocolDescriptor], family: str, attack: str):
    if descriptor is not None and descriptor.params.get("family") != family:
        raise PreconditionError(f"{attack} targets {family} protocols, not {descriptor.name}")


# qutrit Random-OT: Alice

def _return_qutrit(ctx, message: QuantumPayload):
    x0, x1 = ctx.random_bits(2)
    ctx.apply(qutrit_phase(x0, x1), message.handle)
    yield Send(message)
    expect_bits((yield RECEIVE), 1)
    return x0, x1


def computational_guess_success(amplitude: float = SQRT_HALF) -> float:
    """Exact success of guessing b from a computational-basis measurement (2 -> coin toss)."""
    total = 0.0
    for b in (0, 1):
        probs = np.real(np.diag(alice_view_cks10(b, amplitude).matrix))
        total += 0.5 * (probs[b] + 0.5 * probs[2])
    return float(total)


def lost_message_prediction(max_restarts: Optional[int], amplitude: float = SQRT_HALF) -> float:
    """Success of the lost-message attack, by recursion over the restart tree; 1 when unbounded."""
    if max_restarts is None:
        return 1.0
    if max_restarts < 0:
        raise ValueError("max_restarts must be nonnegative")
    informative = amplitude ** 2
    success = informative + (1 - informative) / 2
    for _ in range(max_restarts):
        success = informative + (1 - informative) * success
    return success


def alice_lost_message_attack(max_restarts: Optional[int], amplitude: float = SQRT_HALF) -> Strategy:
    """Measure Bob's qutrit; on outcome 2 claim it was lost, until the restart budget is spent."""
    def attempt(ctx):
        message = expect_quantum((yield RECEIVE))
        outcome = ctx.measure(Z3, message.handle)
        if outcome == 2 and (max_restarts is None or ctx.restarts_seen < max_restarts):
            yield Send(LossDeclaration())
        guess = outcome if outcome < 2 else ctx.random_bit()
        from_alice = yield from _return_qutrit(ctx, message)
        return AttackOutput(guess, from_alice)

    def program(ctx):
        return (yield from restartable(ctx, attempt))

    predicted = lost_message_prediction(max_restarts, amplitude)
    certificates = (
        Certificate.check("single attempt equals helstrom bound",
                          computational_guess_success(amplitude), alice_helstrom_bound(amplitude)),
    )
    if max_restarts is not None and abs(amplitude - SQRT_HALF) <= 1e-12:
        certificates += (Certificate.check("restart recursion closed form", predicted,
                                           1 - 2.0 ** -(max_restarts + 2)),)
    budget = "unbounded" if max_restarts is None else max_restarts
    return Strategy(f"alice-lost-message(r={budget})", Party.ALICE, program, honest=False,
                    target=TARGET_B, predicted=predicted, certificates=certificates)


def alice_helstrom_attack(amplitude: float = SQRT_HALF) -> Strategy:
    """Optimal b discrimination without abusing loss: a computational-basis measurement."""
    def attempt(ctx):
        message = expect_quantum((yield RECEIVE))
        outcome = ctx.measure(Z3, message.handle)
        guess = outcome if outcome < 2 else ctx.random_bit()
        from_alice = yield from _return_qutrit(ctx, message)
        return AttackOutput(guess, from_alice)

    def program(ctx):
        return (yield from restartable(ctx, attempt))

    bound = helstrom(alice_view_cks10(0, amplitude), alice_view_cks10(1, amplitude))
    certificates = (
        Certificate.check("helstrom(rho_0, rho_1)", bound, alice_helstrom_bound(amplitude)),
        Certificate.check("computational measurement attains helstrom", computational_guess_success(amplitude), bound),
    )
    return Strategy("alice-helstrom", Party.ALICE, program, honest=False,
                    target=TARGET_B, predicted=bound, certificates=certificates)


# qutrit Random-OT: Bob

def parity_class_states():
    """Bob's joint state after Alice's phases, for each (x0, x1)."""
    return {xs: apply_unitary(PHI_PLUS_QUTRITS, qutrit_phase(*xs), [1]) for xs in product((0, 1), repeat=2)}


@lru_cache(maxsize=None)
def parity_certificates() -> Tuple[Certificate, ...]:
    states = parity_class_states()
    cross = max(abs(states[a].inner(states[b])) for a in states for b in states
                if (a[0] ^ a[1]) != (b[0] ^ b[1]))
    same = min(abs(states[a].inner(states[b])) for a in states for b in states
               if (a[0] ^ a[1]) == (b[0] ^ b[1]))
    return (
        Certificate.check("parity classes orthogonal", cross, 0.0),
        Certificate.check("parity class fixes the state up to phase", same, 1.0),
        Certificate.check("parity measurement gram deviation",
                          gram_deviation([states[(0, 0)], states[(0, 1)]]), 0.0),
    )


def bob_parity_attack() -> Strategy:
    """Send half of (|00>+|11>)/sqrt2 instead of |phi_b>; the returned pair reveals x0 xor x1."""
    def attempt(ctx):
        kept, sent = ctx.prepare(PHI_PLUS_QUTRITS)
        yield Send(QuantumPayload((sent,)))
        returned = expect_quantum((yield RECEIVE))
        parity = ctx.measure(parity_povm(), (kept,) + returned.handle)
        yield Send(bits(0))
        return AttackOutput(parity)

    def program(ctx):
        return (yield from restartable(ctx, attempt))

    return Strategy("bob-parity", Party.BOB, program, honest=False, target=TARGET_PARITY,
                    predicted=1.0, certificates=parity_certificates())


# unfair qubit Random-OT

@lru_cache(maxsize=None)
def epr_certificates() -> Tuple[Certificate, ...]:
    return (Certificate.check("bell states gram deviation",
                              gram_deviation([bell_after_encoding(*xs) for xs in BELL_LABELS]), 0.0),)


def bob_epr_attack() -> Strategy:
    """Send half of |Phi+>; a Bell measurement on the returned pair yields (x0, x1)."""
    def attempt(ctx):
        kept, sent = ctx.prepare(PHI_PLUS_QUBITS)
        yield Send(QuantumPayload((sent,)))
        returned = expect_quantum((yield RECEIVE))
        x0, x1 = BELL_LABELS[ctx.measure(bell_povm(), (kept,) + returned.handle)]
        yield Send(bits(0))
        return AttackOutput(x0 ^ x1, recovered=(x0, x1))

    def program(ctx):
        return (yield from restartable(ctx, attempt))

    return Strategy("bob-epr", Party.BOB, program, honest=False, target=TARGET_PARITY,
                    predicted=1.0, certificates=epr_certificates())


@lru_cache(maxsize=None)
def accumulated_view_certificates(views: int) -> Tuple[Certificate, ...]:
    rho0 = tensor_power(unfair_alice_view(0), views)
    rho1 = tensor_power(unfair_alice_view(1), views)
    return (
        Certificate.check(f"trace distance over {views} view(s)", trace_distance(rho0, rho1), 0.0),
        Certificate.check(f"helstrom over {views} view(s)", helstrom(rho0, rho1), 0.5),
    )


def alice_protocol6_attack(declared_losses: int = 0) -> Strategy:
    """Declare ``declared_losses`` qubits lost, then play honestly and guess b."""
    def program(ctx):
        declared = 0

        def attempt(ctx):
            nonlocal declared
            message = expect_quantum((yield RECEIVE))
            if declared < declared_losses:
                declared += 1
                yield Send(LossDeclaration())
            x0, x1 = ctx.random_bits(2)
            ctx.apply(pauli_encoding(x0, x1), message.handle)
            yield Send(message)
            expect_bits((yield RECEIVE), 1)
            return AttackOutput(ctx.random_bit(), (x0, x1))

        return (yield from restartable(ctx, attempt))

    return Strategy(f"alice-guess(declared={declared_losses})", Party.ALICE, program, honest=False,
                    target=TARGET_B, predicted=0.5,
                    certificates=accumulated_view_certificates(declared_losses + 1))


# ideal Random-OT box

def ideal_rot_attack(descriptor: ProtocolDescriptor, party: Party) -> Strategy:
    _require_family(descriptor, "ideal-rot", "ideal-rot cheat request")
    box = descriptor.params["box"]

    def alice(ctx):
        draw = yield Invoke(box, Party.ALICE, CHEAT)
        guess = draw.leak if draw.leak is not None else ctx.random_bit()
        return AttackOutput(guess)

    def bob(ctx):
        draw = yield Invoke(box, Party.BOB, CHEAT)
        guess = draw.second ^ draw.leak if draw.leak is not None else ctx.random_bit()
        return AttackOutput(guess)

    if party is Party.ALICE:
        return Strategy("alice-cheat-request", party, alice, honest=False, target=TARGET_B,
                        predicted=descriptor.profile.A)
    return Strategy("bob-cheat-request", party, bob, honest=False, target=TARGET_PARITY,
                    predicted=descriptor.profile.B)


# weak coin flip

def wcf_cheater(descriptor: ProtocolDescriptor, party: Party) -> Strategy:
    """Force the favorable coin (0 for Alice, 1 for Bob)."""
    _require_family(descriptor, "wcf", "coin forcing")
    box = descriptor.params["box"]
    favored = 0 if party is Party.ALICE else 1

    def program(ctx):
        c = yield Invoke(box, party, CHEAT)
        return AttackOutput(favored, output=c)

    force = box.spec.a_wcf if party is Party.ALICE else box.spec.b_wcf
    return Strategy(f"{party.value}-force-coin", party, program, honest=False, target=TARGET_COIN, predicted=force)


# prototype

def curious_prototype(descriptor: ProtocolDescriptor, party: Party, cheat_wcf: bool = False) -> Strategy:
    """Follow the prototype exactly and guess the other party's secret from the view."""
    _require_family(descriptor, "prototype", "curious prototype play")
    box = descriptor.params["box"]
    force = (box.spec.a_wcf if party is Party.ALICE else box.spec.b_wcf) if cheat_wcf else 0.5
    play = prototype_alice(box, cheat_wcf) if party is Party.ALICE else prototype_bob(box, cheat_wcf)

    def program(ctx):
        output, view = yield from play(ctx)
        guess = view if view is not None else ctx.random_bit()
        return AttackOutput(guess, output)

    label = "cheating" if cheat_wcf else "curious"
    return Strategy(f"{party.value}-{label}-prototype", party, program, honest=not cheat_wcf,
                    target=TARGET_B if party is Party.ALICE else TARGET_PARITY,
                    predicted=combined_prediction(force, 1.0, 0.5))


# composites

def role_switched_attack(inner_attack: Strategy, party: Party) -> Strategy:
    """Lift an attack on the inner Random-OT through the role switch."""
    if inner_attack.role is not party.peer:
        raise PreconditionError("the role switch lifts an inner attack of the opposite role")

    def alice(ctx):
        inner = yield from inner_attack.program(ctx)
        yield Send(bits(ctx.random_bit()))
        return AttackOutput(inner.guess, recovered=inner.recovered)

    def bob(ctx):
        inner = yield from inner_attack.program(ctx)
        expect_bits((yield RECEIVE), 1)
        return AttackOutput(inner.guess, recovered=inner.recovered)

    return Strategy(f"role-switched({inner_attack.name})", party, alice if party is Party.ALICE else bob,
                    honest=False, target=TARGET_B if party is Party.ALICE else TARGET_PARITY,
                    predicted=inner_attack.predicted, certificates=inner_attack.certificates)


def combined_protocol_attack(descriptor: ProtocolDescriptor, party: Party) -> Strategy:
    """Force the favorable coin, then run the best attack on the branch it selects."""
    _require_family(descriptor, "combined", "combined attack")
    box = descriptor.params["box"]
    x, y = descriptor.params["x"], descriptor.params["y"]
    rot_xy, rot_yx = descriptor.inner
    attacks = {0: optimal_attack(rot_xy, party), 1: optimal_attack(rot_yx, party)}

    def program(ctx):
        c = yield Invoke(box, party, CHEAT)
        ctx.note("coin", c=c)
        return (yield from attacks[c].program(ctx))

    force = box.spec.a_wcf if party is Party.ALICE else box.spec.b_wcf
    certificates = tuple(c for a in attacks.values() for c in a.certificates)
    return Strategy(f"{party.value}-combined", party, program, honest=False,
                    target=TARGET_B if party is Party.ALICE else TARGET_PARITY,
                    predicted=combined_prediction(force, x, y), certificates=certificates)


def optimal_attack(descriptor: ProtocolDescriptor, party: Party) -> Strategy:
    """Best known attack on ``descriptor`` by ``party``."""
    family = descriptor.params.get("family")
    if family == "cks10":
        amplitude = descriptor.params.get("amplitude", SQRT_HALF)
        return alice_helstrom_attack(amplitude) if party is Party.ALICE else bob_parity_attack()
    if family == "unfair":
        return alice_protocol6_attack() if party is Party.ALICE else bob_epr_attack()
    if family == "ideal-rot":
        return ideal_rot_attack(descriptor, party)
    if family == "role-switch":
        return role_switched_attack(optimal_attack(descriptor.inner[0], party.peer), party)
    if family == "combined":
        return combined_protocol_attack(descriptor, party)
    if family == "prototype":
        return curious_prototype(descriptor, party, cheat_wcf=True)
    if family == "wcf":
        return wcf_cheater(descriptor, party)
    raise UnknownStrategyError(f"no attack registered for {descriptor.name}")
