"""
Monte Carlo estimation of cheating probabilities and honest correctness.
"""

from collections import Counter
from itertools import product
from typing import Callable, Iterable, List, NamedTuple, Optional, Sequence, Union

from ..adversaries.report import SUCCESS, success_classifier
from ..engine.messages import ChannelConfig, Party, ProtocolOutcome
from ..engine.runner import resolve_protocol, run_protocol
from ..engine.strategy import ProtocolDescriptor, Strategy
from ..engine.transcript import Transcript
from ..engine.trials import TrialCounts, run_trials, trial_seed
from ..errors import PreconditionError
from ..protocols.cks10 import alice_helstrom_bound, decoding_table, honest_error
from ..quantum import helstrom
from ..quantum.gates import alice_view_cks10
from ..schemas.domain import TrialStats
from .stats import uniformity_pvalue, wilson_interval

MIN_ESTIMATION_TRIALS = 100
CORRECT = "correct"
INCORRECT = "incorrect"


class LossGainPoint(NamedTuple):
    r: int
    stats: TrialStats
    predicted: float


class AmplitudePoint(NamedTuple):
    amplitude: float
    alice_helstrom: float
    honest_error: float


def estimate_cheating(protocol: Union[str, ProtocolDescriptor], attack: Strategy, honest: Strategy,
                      channel: Optional[ChannelConfig] = None, n: int = 10000, seed: int = 0,
                      parallel: Optional[int] = None) -> TrialStats:
    """Fraction of runs that complete with the attacker holding the honest party's secret."""
    if n < MIN_ESTIMATION_TRIALS:
        raise PreconditionError(f"estimation needs at least {MIN_ESTIMATION_TRIALS} trials")
    if attack.role is honest.role:
        raise PreconditionError("attack and honest strategy play the same role")
    alice, bob = (attack, honest) if attack.role is Party.ALICE else (honest, attack)
    counts = run_trials(protocol, alice, bob, channel, n, seed,
                        classify=success_classifier(attack), parallel=parallel)
    return counts.stats(SUCCESS)


def rot_correct(outcome: ProtocolOutcome, transcript: Transcript) -> str:
    if not outcome.completed:
        return outcome.label
    alice, bob = outcome.alice_output, outcome.bob_output
    return CORRECT if bob.xb == alice.bit(bob.b) else INCORRECT


def completed_correctness(counts: TrialCounts) -> Optional[TrialStats]:
    """Correct fraction among completed runs; None when nothing completed."""
    completed = counts.counts[CORRECT] + counts.counts[INCORRECT]
    if completed == 0:
        return None
    successes = counts.counts[CORRECT]
    low, high = wilson_interval(successes, completed)
    return TrialStats(label=CORRECT, n=completed, successes=successes, estimate=successes / completed,
                      ci_low=low, ci_high=high, seed=counts.base_seed)


def honest_correctness_counts(protocol: Union[str, ProtocolDescriptor], channel: Optional[ChannelConfig] = None,
                              n: int = 10000, seed: int = 0, parallel: Optional[int] = None) -> TrialCounts:
    descriptor = resolve_protocol(protocol)
    return run_trials(descriptor, descriptor.honest_alice(), descriptor.honest_bob(), channel, n, seed,
                      classify=rot_correct, parallel=parallel)


def estimate_correctness(protocol: Union[str, ProtocolDescriptor], channel: Optional[ChannelConfig] = None,
                         n: int = 10000, seed: int = 0, parallel: Optional[int] = None) -> TrialStats:
    """Fraction of completed honest runs where Bob's x_b equals Alice's."""
    counts = honest_correctness_counts(protocol, channel, n, seed, parallel)
    stats = completed_correctness(counts)
    if stats is None:
        raise PreconditionError(f"no honest run of {counts.protocol} completed")
    return stats


def loss_gain_curve(protocol: Union[str, ProtocolDescriptor], attack_family: Callable[[int], Strategy],
                    r_values: Sequence[int], n: int = 10000, seed: int = 0,
                    parallel: Optional[int] = None) -> List[LossGainPoint]:
    """Success of a loss-abusing attack as the restart budget r grows."""
    if not r_values:
        raise PreconditionError("r_values must be nonempty")
    descriptor = resolve_protocol(protocol)
    points = []
    for r in r_values:
        attack = attack_family(r)
        channel = ChannelConfig(adversarial_loss_allowed=True, max_restarts=r)
        stats = estimate_cheating(descriptor, attack, descriptor.honest(attack.role.peer), channel, n, seed, parallel)
        points.append(LossGainPoint(r, stats, attack.predicted))
    return points


def amplitude_tradeoff(a_values: Iterable[float]) -> List[AmplitudePoint]:
    """Alice's Helstrom bound against honest Bob's decoding error for a|bb> + sqrt(1-a^2)|22>."""
    points = []
    for a in a_values:
        bound = helstrom(alice_view_cks10(0, a), alice_view_cks10(1, a))
        table = decoding_table(a)
        error = 1.0 - sum(table.values()) / len(table)
        points.append(AmplitudePoint(float(a), bound, error))
    return points


def amplitude_closed_forms(a: float) -> AmplitudePoint:
    return AmplitudePoint(a, alice_helstrom_bound(a), honest_error(a))


def restart_freshness(protocol: Union[str, ProtocolDescriptor], party: Party, channel: ChannelConfig,
                      n: int = 10000, seed: int = 0) -> float:
    """
    Chi-square p-value that ``party``'s draws in consecutive attempts are
    independent and uniform. Each (draw before, draw after a restart) pair
    is one observation over the joint outcome space.
    """
    descriptor = resolve_protocol(protocol)
    pairs: Counter = Counter()
    width = 0
    for i in range(n):
        _, transcript = run_protocol(descriptor, descriptor.honest_alice(), descriptor.honest_bob(),
                                     channel, trial_seed(seed, i))
        draws = [tuple(e.data[k] for k in sorted(e.data))
                 for e in transcript.notes("draw") if e.sender == party.value]
        for before, after in zip(draws, draws[1:]):
            width = len(before)
            pairs[(before, after)] += 1
    if not pairs:
        return 1.0
    space = list(product((0, 1), repeat=width))
    return uniformity_pvalue(pairs[(a, b)] for a in space for b in space)
