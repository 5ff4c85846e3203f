"""
Strategy registry keyed by the names the CLI accepts.
"""

from typing import Callable, Dict, List, NamedTuple, Optional

from ..engine.messages import Party
from ..engine.strategy import ProtocolDescriptor, Strategy
from ..errors import PreconditionError, UnknownStrategyError
from ..quantum.gates import SQRT_HALF
from .attacks import (
    alice_helstrom_attack, alice_lost_message_attack, alice_protocol6_attack, bob_epr_attack,
    bob_parity_attack, curious_prototype, optimal_attack, wcf_cheater,
)


class StrategyOptions(NamedTuple):
    max_restarts: Optional[int] = None
    declared_losses: int = 0


class _Entry(NamedTuple):
    role: Optional[Party]
    family: Optional[str]
    build: Callable[[ProtocolDescriptor, Party, StrategyOptions], Strategy]
    description: str


def _amplitude(descriptor: ProtocolDescriptor) -> float:
    return descriptor.params.get("amplitude", SQRT_HALF)


_STRATEGIES: Dict[str, _Entry] = {
    "honest": _Entry(None, None, lambda d, p, o: d.honest(p), "follow the protocol"),
    "alice-optimal": _Entry(Party.ALICE, None, lambda d, p, o: optimal_attack(d, p), "best known Alice attack"),
    "bob-optimal": _Entry(Party.BOB, None, lambda d, p, o: optimal_attack(d, p), "best known Bob attack"),
    "alice-lost-message": _Entry(
        Party.ALICE, "cks10", lambda d, p, o: alice_lost_message_attack(o.max_restarts, _amplitude(d)),
        "measure the qutrit, declare it lost on outcome 2"),
    "alice-helstrom": _Entry(
        Party.ALICE, "cks10", lambda d, p, o: alice_helstrom_attack(_amplitude(d)),
        "optimal discrimination of b without loss abuse"),
    "bob-parity": _Entry(Party.BOB, "cks10", lambda d, p, o: bob_parity_attack(),
                         "send half of an entangled qutrit pair, read x0 xor x1"),
    "bob-epr": _Entry(Party.BOB, "unfair", lambda d, p, o: bob_epr_attack(),
                      "send half of |Phi+>, Bell-measure the returned pair"),
    "alice-guess": _Entry(Party.ALICE, "unfair", lambda d, p, o: alice_protocol6_attack(o.declared_losses),
                          "declare losses, then guess b"),
    "alice-curious": _Entry(Party.ALICE, "prototype", lambda d, p, o: curious_prototype(d, p),
                            "honest play, guess b from the view"),
    "bob-curious": _Entry(Party.BOB, "prototype", lambda d, p, o: curious_prototype(d, p),
                          "honest play, guess x0 xor x1 from the view"),
    "alice-force-coin": _Entry(Party.ALICE, "wcf", lambda d, p, o: wcf_cheater(d, p), "force c=0"),
    "bob-force-coin": _Entry(Party.BOB, "wcf", lambda d, p, o: wcf_cheater(d, p), "force c=1"),
}


def strategy_names() -> List[str]:
    return sorted(_STRATEGIES)


def describe_strategies() -> Dict[str, str]:
    return {name: _STRATEGIES[name].description for name in strategy_names()}


def build_strategy(name: str, role: Party, descriptor: ProtocolDescriptor,
                   options: StrategyOptions = StrategyOptions()) -> Strategy:
    try:
        entry = _STRATEGIES[name]
    except KeyError:
        raise UnknownStrategyError(f"unknown strategy '{name}'; known: {', '.join(strategy_names())}")
    if entry.role is not None and entry.role is not role:
        raise PreconditionError(f"strategy {name} plays {entry.role.value}, not {role.value}")
    if entry.family is not None and descriptor.params.get("family") != entry.family:
        raise PreconditionError(f"strategy {name} does not apply to {descriptor.name}")
    return entry.build(descriptor, role, options)
