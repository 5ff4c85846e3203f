"""
Tests for derandomization and the role switch
"""

from itertools import product

import pytest

from ltot.engine import RECEIVE, ChannelConfig, Party, Send, Strategy, bits, run_protocol
from ltot.engine.trials import trial_seed
from ltot.protocols import build_protocol, ot_from_rot, unfair_lt_rot
from ltot.protocols.base import ReceiverOutput, SenderOutput
from ltot.protocols.reductions import (
    derandomize, flip_mask, match_permutation, permute, role_switch_outputs,
)


def test_match_permutation():
    assert match_permutation(0, 0) == (0, 1)
    assert match_permutation(1, 0) == (1, 0)
    assert permute((0, 1), (1, 0)) == (1, 0)
    assert flip_mask((1, 0), (1, 1)) == (0, 1)


def test_derandomization_exhaustive():
    cases = 0
    for x0, x1, b, r0, r1, rb in product((0, 1), repeat=6):
        random_sender = SenderOutput(r0, r1)
        random_receiver = ReceiverOutput(rb, random_sender.bit(rb))
        sender, receiver = derandomize(x0, x1, b, random_sender, random_receiver)
        assert (sender.x0, sender.x1) == (x0, x1)
        assert receiver.b == b
        assert receiver.xb == (x1 if b else x0)
        cases += 1
    assert cases == 64


def test_role_switch_truth_table():
    for b, x0, x1, d in product((0, 1), repeat=4):
        sender, receiver = role_switch_outputs(b, x0, x1, d)
        assert receiver.xb == sender.bit(receiver.b)
        assert sender.x0 ^ sender.x1 == b
        assert receiver.b == x0 ^ x1


def test_classical_loss_changes_transcripts_not_outputs():
    descriptor = ot_from_rot(unfair_lt_rot())
    resends = 0
    for i in range(30):
        seed = trial_seed(3, i)
        clean, clean_transcript = run_protocol(descriptor, descriptor.honest_alice(), descriptor.honest_bob(),
                                               ChannelConfig(), seed)
        noisy, noisy_transcript = run_protocol(descriptor, descriptor.honest_alice(), descriptor.honest_bob(),
                                               ChannelConfig(classical_loss_rate=0.3), seed)
        assert clean == noisy
        assert len(noisy_transcript) >= len(clean_transcript)
        resends += sum(1 for e in noisy_transcript if e.kind == "classical" and e.lost)
    assert resends > 0


def test_sender_rejects_malformed_announcement():
    descriptor = build_protocol("ot-from-rot", inner="ideal-rot")
    rot = descriptor.inner[0]

    def bob(ctx):
        yield from rot.bob_program()(ctx)
        yield Send(bits(1, 1))
        yield RECEIVE
        return "never"

    outcome, _ = run_protocol(descriptor, descriptor.honest_alice(), Strategy("bad", Party.BOB, bob))
    assert outcome.aborted_by is Party.ALICE


def test_rot_from_ot_notes_its_inputs(run_honest):
    descriptor = build_protocol("rot-from-ot")
    outcome, transcript = run_honest(descriptor, seed=12)
    notes = {e.sender: e.data for e in transcript.notes("inputs")}
    assert notes["alice"] == {"x0": outcome.alice_output.x0, "x1": outcome.alice_output.x1}
    assert notes["bob"] == {"b": outcome.bob_output.b}


@pytest.mark.parametrize("inner", ["unfair-lt-rot", "cks10-rot", "ideal-rot"])
def test_role_switch_over_each_inner(inner, run_honest):
    descriptor = build_protocol("role-switch", inner=inner)
    for seed in range(20):
        outcome, _ = run_honest(descriptor, seed=seed)
        assert outcome.bob_output.xb == outcome.alice_output.bit(outcome.bob_output.b)


@pytest.mark.parametrize("name", ["role-switch", "combined-rot", "ot-from-rot"])
def test_composites_over_ideal_rot_are_correct(name, run_honest):
    descriptor = build_protocol(name, inner="ideal-rot")
    for seed in range(100):
        outcome, _ = run_honest(descriptor, seed=seed)
        assert outcome.completed
        assert outcome.bob_output.xb == outcome.alice_output.bit(outcome.bob_output.b)
