"""
Tests for the cheating strategies, their predictions and their scoring
"""

import pytest

from ltot.adversaries import (
    alice_helstrom_attack, alice_lost_message_attack, alice_protocol6_attack, bob_epr_attack,
    bob_parity_attack, build_attack_report, build_strategy, combined_protocol_attack, curious_prototype,
    ideal_rot_attack, lost_message_prediction, optimal_attack, role_switched_attack, scored_strategy,
    wcf_cheater,
)
from ltot.adversaries.attacks import accumulated_view_certificates, computational_guess_success
from ltot.adversaries.registry import StrategyOptions, describe_strategies
from ltot.analysis.estimation import estimate_cheating
from ltot.engine import ChannelConfig, Party, run_protocol
from ltot.errors import PreconditionError, UnknownStrategyError
from ltot.protocols import (
    build_protocol, combined_from_base, ideal_rot, prototype_rot, role_switch, unfair_lt_rot, wcf_black_box,
)
from ltot.schemas.domain import CheatProfile, TrialStats, WcfSpec

ADVERSARIAL = ChannelConfig(adversarial_loss_allowed=True)


@pytest.mark.parametrize("r, expected", [(0, 0.75), (1, 0.875), (3, 0.96875), (7, 1 - 2.0 ** -9)])
def test_lost_message_prediction(r, expected):
    assert lost_message_prediction(r) == pytest.approx(expected, abs=1e-12)


def test_lost_message_prediction_unbounded_and_invalid():
    assert lost_message_prediction(None) == 1.0
    with pytest.raises(ValueError):
        lost_message_prediction(-1)


def test_computational_guess_matches_helstrom():
    assert computational_guess_success() == pytest.approx(0.75, abs=1e-12)


@pytest.mark.parametrize("attack", [
    alice_lost_message_attack(3), alice_helstrom_attack(), bob_parity_attack(), bob_epr_attack(),
    alice_protocol6_attack(2),
])
def test_attack_certificates_pass(attack):
    assert attack.certificates
    assert all(c.passed for c in attack.certificates), [c for c in attack.certificates if not c.passed]


def test_accumulated_views_stay_identical():
    for views in (1, 3):
        assert all(c.passed for c in accumulated_view_certificates(views))


# qutrit Random-OT

def test_helstrom_attack_estimate(cks10, near):
    attack = alice_helstrom_attack()
    stats = estimate_cheating(cks10, attack, cks10.honest_bob(), n=2000, seed=21)
    assert near(stats, 0.75)


def test_lost_message_attack_with_one_restart(cks10, near):
    attack = alice_lost_message_attack(1)
    channel = ChannelConfig(adversarial_loss_allowed=True, max_restarts=1)
    stats = estimate_cheating(cks10, attack, cks10.honest_bob(), channel, n=2000, seed=22)
    assert near(stats, 0.875)


def test_lost_message_attack_unbounded_always_wins(cks10):
    stats = estimate_cheating(cks10, alice_lost_message_attack(None), cks10.honest_bob(), ADVERSARIAL,
                              n=300, seed=23)
    assert stats.estimate == 1.0


def test_lost_message_attack_needs_adversarial_loss(cks10, near):
    stats = estimate_cheating(cks10, alice_lost_message_attack(None), cks10.honest_bob(), n=1000, seed=24)
    # every declaration aborts, every other run is an exact guess
    assert near(stats, 0.5)


def test_parity_attack_is_certain(cks10):
    stats = estimate_cheating(cks10, bob_parity_attack(), cks10.honest_alice(), n=300, seed=25)
    assert stats.estimate == 1.0
    assert stats.successes == 300


# unfair qubit Random-OT

def test_epr_attack_recovers_both_bits(unfair):
    attack = bob_epr_attack()
    for seed in range(30):
        outcome, _ = run_protocol(unfair, unfair.honest_alice(), attack, seed=seed)
        sender = outcome.alice_output
        assert outcome.bob_output.recovered == (sender.x0, sender.x1)


def test_epr_attack_estimate(unfair):
    stats = estimate_cheating(unfair, bob_epr_attack(), unfair.honest_alice(), n=300, seed=26)
    assert stats.estimate == 1.0


@pytest.mark.parametrize("declared", [0, 2])
def test_alice_cannot_learn_b(unfair, near, declared):
    stats = estimate_cheating(unfair, alice_protocol6_attack(declared), unfair.honest_bob(), ADVERSARIAL,
                              n=2000, seed=27)
    assert near(stats, 0.5)


# ideal boxes

@pytest.mark.parametrize("party, expected", [(Party.ALICE, 0.9), (Party.BOB, 0.6)])
def test_ideal_rot_cheat_request(party, expected, near):
    descriptor = ideal_rot(CheatProfile(A=0.9, B=0.6))
    attack = ideal_rot_attack(descriptor, party)
    assert attack.predicted == expected
    stats = estimate_cheating(descriptor, attack, descriptor.honest(party.peer), n=2000, seed=28)
    assert near(stats, expected)


@pytest.mark.parametrize("party, expected", [(Party.ALICE, 0.8), (Party.BOB, 0.7)])
def test_coin_forcing(party, expected, near):
    descriptor = wcf_black_box(WcfSpec(a_wcf=0.8, b_wcf=0.7))
    attack = wcf_cheater(descriptor, party)
    stats = estimate_cheating(descriptor, attack, descriptor.honest(party.peer), n=2000, seed=29)
    assert near(stats, expected)


# composites

@pytest.mark.parametrize("party", [Party.ALICE, Party.BOB])
def test_curious_prototype_leaks_half_the_time(party, near):
    descriptor = prototype_rot()
    attack = curious_prototype(descriptor, party)
    assert attack.predicted == pytest.approx(0.75)
    stats = estimate_cheating(descriptor, attack, descriptor.honest(party.peer), n=2000, seed=30)
    assert near(stats, 0.75)


def test_role_switched_epr_attack():
    descriptor = role_switch(unfair_lt_rot())
    attack = role_switched_attack(bob_epr_attack(), Party.ALICE)
    stats = estimate_cheating(descriptor, attack, descriptor.honest_bob(), n=300, seed=31)
    assert stats.estimate == 1.0


def test_role_switched_attack_requires_opposite_role():
    with pytest.raises(PreconditionError):
        role_switched_attack(bob_epr_attack(), Party.BOB)


@pytest.mark.parametrize("party", [Party.ALICE, Party.BOB])
def test_combined_attack_matches_composition(party, near):
    descriptor = combined_from_base(WcfSpec(a_wcf=0.8536, b_wcf=0.8536), unfair_lt_rot())
    attack = combined_protocol_attack(descriptor, party)
    assert attack.predicted == pytest.approx(0.9268)
    stats = estimate_cheating(descriptor, attack, descriptor.honest(party.peer), n=2000, seed=32)
    assert near(stats, 0.9268)


def test_optimal_attack_dispatch(cks10, unfair):
    assert optimal_attack(cks10, Party.ALICE).name == "alice-helstrom"
    assert optimal_attack(cks10, Party.BOB).name == "bob-parity"
    assert optimal_attack(unfair, Party.BOB).name == "bob-epr"
    with pytest.raises(UnknownStrategyError):
        optimal_attack(build_protocol("ideal-ot"), Party.BOB)


# registry and reports

def test_registry_builds_by_name(cks10):
    strategy = build_strategy("alice-lost-message", Party.ALICE, cks10, StrategyOptions(max_restarts=3))
    assert strategy.predicted == pytest.approx(0.96875)
    assert build_strategy("honest", Party.BOB, cks10).honest
    assert set(describe_strategies()) >= {"honest", "bob-parity", "alice-guess"}


def test_registry_rejects_unknown_strategy(cks10):
    with pytest.raises(UnknownStrategyError):
        build_strategy("alice-magic", Party.ALICE, cks10)


def test_registry_rejects_wrong_role_or_family(cks10):
    with pytest.raises(PreconditionError):
        build_strategy("bob-parity", Party.ALICE, cks10)
    with pytest.raises(PreconditionError):
        build_strategy("bob-epr", Party.BOB, cks10)


def test_scored_strategy_picks_the_attacker(cks10):
    attack = bob_parity_attack()
    assert scored_strategy(cks10.honest_alice(), attack) is attack
    assert scored_strategy(cks10.honest_alice(), cks10.honest_bob()) is None


def _stats(successes, n=1000):
    return TrialStats(n=n, successes=successes, estimate=successes / n, ci_low=0.0, ci_high=1.0, seed=0)


def test_attack_report_status(cks10):
    attack = alice_helstrom_attack()
    assert build_attack_report(attack, cks10, _stats(752)).status == "PASSED"
    failed = build_attack_report(attack, cks10, _stats(900))
    assert failed.status == "FAILED"
    assert not failed.within_band
