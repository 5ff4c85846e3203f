"""
Acceptance suite behind ``ltot selftest``.

Each criterion produces one verdict. Exact checks become certificates;
sampled checks become estimates judged against the sigma band. The suite
scales with ``trials``: ordinary estimates use ``trials`` runs, the
precision estimates ten times as many.
"""

import logging
from datetime import datetime, timezone
from itertools import product
from typing import Any, Dict, List, Optional, Sequence

from ..adversaries.attacks import (
    accumulated_view_certificates, alice_helstrom_attack, alice_lost_message_attack, alice_protocol6_attack,
    bob_epr_attack, bob_parity_attack, combined_protocol_attack, curious_prototype,
    lost_message_prediction, optimal_attack,
)
from ..adversaries.report import SUCCESS, success_classifier
from ..config import DEFAULT_SEED, DEFAULT_TRIALS, FIXED_CLOCK, LTOT_VERSION, PUBLISHED_OT_BIAS, REPORT_SCHEMA_VERSION
from ..engine.messages import ChannelConfig, Party
from ..engine.runner import run_protocol
from ..engine.strategy import ProtocolDescriptor, Strategy
from ..engine.trials import run_trials, trial_seed
from ..logging_config import log_simulation_event
from ..protocols import cks10, unfair
from ..protocols.base import ReceiverOutput, SenderOutput
from ..protocols.ideal import ideal_rot
from ..protocols.reductions import derandomize, ot_from_rot, role_switch, role_switch_outputs
from ..protocols.wcf_based import combined_rot, prototype_rot
from ..quantum.gates import SQRT_HALF
from ..schemas.domain import CheatProfile, TrialStats, WcfSpec
from ..schemas.report import Certificate, Estimate, Report, Verdict
from .composition import compose_theorem1, corollary2, grid_properties, strict_improvement_check
from .estimation import (
    amplitude_closed_forms, amplitude_tradeoff, estimate_correctness, loss_gain_curve, restart_freshness,
)
from .stats import within_sigma_band

LOST_MESSAGE_BUDGETS = (0, 1, 3, 7)
LOSS_RATES = (0.0, 0.3, 0.7)
# Family-wise level of the restart freshness checks (both parties of both
# quantum protocols), split evenly across them.
FRESHNESS_ALPHA = 0.01
FRESHNESS_CHECKS = 4
COMBINED_SETTINGS = (
    (0.8536, 1.0, 0.5),
    (0.5, 1.0, 0.5),
    (0.75, 0.9, 0.6),
    (1.0, 0.8, 0.55),
    (0.6, 0.95, 0.7),
)


def report_clock() -> str:
    return FIXED_CLOCK or datetime.now(timezone.utc).isoformat()


def _freshness(protocol: ProtocolDescriptor, channel: ChannelConfig, n: int, seed: int) -> Dict[Party, float]:
    return {party: restart_freshness(protocol, party, channel, n=n, seed=seed) for party in Party}


def _fresh(pvalues: Dict[Party, float]) -> bool:
    return all(p >= FRESHNESS_ALPHA / FRESHNESS_CHECKS for p in pvalues.values())


def _describe_freshness(pvalues: Dict[Party, float]) -> str:
    return "restart freshness " + ", ".join(f"{party.value} p={p:.4f}" for party, p in pvalues.items())


class _Suite:
    def __init__(self, trials: int, seed: int, parallel: Optional[int]):
        self.trials = trials
        self.big = 10 * trials
        self.seed = seed
        self.parallel = parallel
        self.estimates: List[Estimate] = []
        self.certificates: List[Certificate] = []
        self.compositions = []
        self.verdicts: List[Verdict] = []

    def estimate(self, name: str, protocol: str, stats: TrialStats, predicted: Optional[float] = None,
                 **params: Any) -> bool:
        within = within_sigma_band(stats.estimate, predicted, stats.n) if predicted is not None else None
        self.estimates.append(Estimate(name=name, protocol=protocol, stats=stats, predicted=predicted,
                                       within_band=within, params=params))
        return within is not False

    def certify(self, certificates: Sequence[Certificate]) -> bool:
        self.certificates.extend(certificates)
        return all(c.passed for c in certificates)

    def verdict(self, name: str, checks: Sequence[bool], detail: str = ""):
        passed = all(checks)
        self.verdicts.append(Verdict(name=name, passed=passed, detail=detail))
        log_simulation_event("criterion_checked", "Acceptance criterion evaluated", level=logging.INFO,
                             component="selftest", criterion=name, passed=passed)

    def attack(self, descriptor: ProtocolDescriptor, attack: Strategy, channel: Optional[ChannelConfig] = None,
               n: Optional[int] = None, name: Optional[str] = None, **params: Any):
        """Run ``attack`` against the honest peer; returns (within band, trial counts)."""
        honest = descriptor.honest(attack.role.peer)
        alice, bob = (attack, honest) if attack.role is Party.ALICE else (honest, attack)
        counts = run_trials(descriptor, alice, bob, channel, n or self.trials, self.seed,
                            classify=success_classifier(attack), parallel=self.parallel)
        within = self.estimate(name or attack.name, descriptor.name, counts.stats(SUCCESS), attack.predicted,
                               **params)
        certified = self.certify(attack.certificates)
        return within and certified, counts


# criteria

def _cks10_correctness(suite: _Suite):
    protocol = cks10.cks10_rot()
    stats = estimate_correctness(protocol, n=suite.trials, seed=suite.seed, parallel=suite.parallel)
    exact = suite.certify([Certificate.check(f"cks10 decodes {key}", p, 1.0)
                           for key, p in cks10.decoding_table().items()])
    lossy = ChannelConfig(loss_rate=0.3)
    lossy_stats = estimate_correctness(protocol, lossy, n=suite.trials, seed=suite.seed, parallel=suite.parallel)
    pvalues = _freshness(protocol, lossy, suite.trials, suite.seed)
    tradeoff = amplitude_tradeoff([0.5, 0.6, SQRT_HALF, 0.9])
    closed = suite.certify([
        Certificate.check(f"amplitude {point.amplitude:.4f} {field}", getattr(point, field),
                          getattr(amplitude_closed_forms(point.amplitude), field))
        for point in tradeoff for field in ("alice_helstrom", "honest_error")
    ])
    suite.verdict("1-cks10-honest-correctness", [
        suite.estimate("cks10 honest correctness", protocol.name, stats, 1.0),
        suite.estimate("cks10 honest correctness under loss", protocol.name, lossy_stats, 1.0, loss_rate=0.3),
        exact, closed, _fresh(pvalues),
    ], detail=_describe_freshness(pvalues))


def _cks10_helstrom(suite: _Suite):
    protocol = cks10.cks10_rot()
    passed, _ = suite.attack(protocol, alice_helstrom_attack(), n=suite.big)
    suite.verdict("2-cks10-alice-helstrom", [passed])


def _cks10_lost_message(suite: _Suite):
    protocol = cks10.cks10_rot()
    points = loss_gain_curve(protocol, alice_lost_message_attack, LOST_MESSAGE_BUDGETS,
                             n=suite.trials, seed=suite.seed, parallel=suite.parallel)
    checks = [suite.estimate(f"lost-message r={p.r}", protocol.name, p.stats, p.predicted, max_restarts=p.r)
              for p in points]
    checks.append(suite.certify(alice_lost_message_attack(1).certificates))
    at_one = next(p for p in points if p.r == 1)
    checks.append(at_one.stats.estimate > cks10.alice_helstrom_bound())
    limit = loss_gain_curve(protocol, alice_lost_message_attack, [20], n=suite.trials, seed=suite.seed,
                            parallel=suite.parallel)[0]
    suite.estimate("lost-message r=20", protocol.name, limit.stats, limit.predicted, max_restarts=20)
    checks.append(limit.stats.estimate >= 0.999)
    suite.verdict("3-cks10-lost-message-curve", checks,
                  detail=f"predicted r=1 {lost_message_prediction(1):.4f} exceeds {cks10.alice_helstrom_bound():.2f}")


def _cks10_parity(suite: _Suite):
    protocol = cks10.cks10_rot()
    passed, counts = suite.attack(protocol, bob_parity_attack())
    aborted = counts.counts["aborted_by_alice"]
    suite.verdict("4-cks10-bob-parity", [passed, aborted == 0],
                  detail=f"honest alice aborts: {aborted}")


def _unfair(suite: _Suite):
    protocol = unfair.unfair_lt_rot()
    decoded = suite.certify([Certificate.check(f"unfair decodes {key}", p, 1.0)
                             for key, p in unfair.decoding_table().items()])
    views = suite.certify(accumulated_view_certificates(1) + accumulated_view_certificates(3))
    epr, _ = suite.attack(protocol, bob_epr_attack())
    checks = [decoded, views, epr]
    pvalues = _freshness(protocol, ChannelConfig(loss_rate=0.3), suite.trials, suite.seed)
    checks.append(_fresh(pvalues))
    for rate in LOSS_RATES:
        channel = ChannelConfig(loss_rate=rate)
        for attack in (bob_epr_attack(), alice_protocol6_attack()):
            passed, _ = suite.attack(protocol, attack, channel, name=f"{attack.name} loss={rate}", loss_rate=rate)
            checks.append(passed)
    declaring = ChannelConfig(adversarial_loss_allowed=True)
    passed, _ = suite.attack(protocol, alice_protocol6_attack(2), declaring)
    checks.append(passed)
    suite.verdict("5-unfair-loss-tolerance", checks, detail=_describe_freshness(pvalues))


def _role_switch(suite: _Suite):
    table = []
    for b, x0, x1, d in product((0, 1), repeat=4):
        sender, receiver = role_switch_outputs(b, x0, x1, d)
        table.append(receiver.xb == sender.bit(receiver.b)
                     and sender.x0 ^ sender.x1 == b
                     and receiver.b == x0 ^ x1)
    inner = unfair.unfair_lt_rot()
    switched = role_switch(inner)
    checks = [all(table)]
    for party in (Party.ALICE, Party.BOB):
        passed, _ = suite.attack(switched, optimal_attack(switched, party))
        checks.append(passed)
    swapped = switched.profile == inner.profile.swapped()
    suite.verdict("6-role-switch", checks + [swapped],
                  detail=f"inner ({inner.profile.A}, {inner.profile.B}) -> ({switched.profile.A}, {switched.profile.B})")


def _derandomization(suite: _Suite):
    cases = []
    for x0, x1, b, r0, r1, rb in product((0, 1), repeat=6):
        random_sender = SenderOutput(r0, r1)
        random_receiver = ReceiverOutput(rb, random_sender.bit(rb))
        _, receiver = derandomize(x0, x1, b, random_sender, random_receiver)
        cases.append(receiver.xb == (x1 if b else x0))

    protocol = ot_from_rot(unfair.unfair_lt_rot())
    quiet, noisy = ChannelConfig(), ChannelConfig(classical_loss_rate=0.3)
    same_outputs, resends = True, 0
    for i in range(min(suite.trials, 500)):
        seed = trial_seed(suite.seed, i)
        clean, _ = run_protocol(protocol, protocol.honest_alice(), protocol.honest_bob(), quiet, seed)
        lossy, transcript = run_protocol(protocol, protocol.honest_alice(), protocol.honest_bob(), noisy, seed)
        same_outputs &= clean == lossy and clean.bob_output.xb == clean.alice_output.bit(clean.bob_output.b)
        resends += sum(1 for e in transcript if e.kind == "classical" and e.lost)
    suite.verdict("7-derandomization", [all(cases), len(cases) == 64, same_outputs, resends > 0],
                  detail=f"classical resends observed: {resends}")


def _prototype(suite: _Suite):
    protocol = prototype_rot()
    checks = []
    for party in (Party.ALICE, Party.BOB):
        passed, _ = suite.attack(protocol, curious_prototype(protocol, party))
        checks.append(passed)
    suite.verdict("8-prototype-leak", checks)


def _composition(suite: _Suite):
    published = corollary2()
    suite.compositions.append(published)
    checks = [
        abs(published.eps_ot - PUBLISHED_OT_BIAS) <= 1e-4,
        published.fair,
        strict_improvement_check(0.9, 0.9, 1.0, 0.5),
        not strict_improvement_check(1.0, 1.0, 1.0, 0.5),
        not strict_improvement_check(0.7, 0.7, 0.8, 0.8),
    ]
    for a_wcf, x, y in COMBINED_SETTINGS:
        wcf = WcfSpec(a_wcf=a_wcf, b_wcf=a_wcf)
        protocol = combined_rot(wcf, ideal_rot(CheatProfile(A=x, B=y)), ideal_rot(CheatProfile(A=y, B=x)))
        result = compose_theorem1(wcf.a_wcf, wcf.b_wcf, x, y)
        suite.compositions.append(result)
        attack = combined_protocol_attack(protocol, Party.ALICE)
        passed, _ = suite.attack(protocol, attack, n=suite.big, name=f"combined a_wcf={a_wcf} x={x} y={y}",
                                 a_wcf=a_wcf, x=x, y=y)
        checks.extend([passed, abs(attack.predicted - result.a_ot) <= 1e-12])
    violations = grid_properties()
    checks.append(not any(v for k, v in violations.items() if k != "points"))
    suite.verdict("9-composition", checks,
                  detail=f"eps_ot={published.eps_ot:.4f}; grid points={violations['points']}")


def _determinism(suite: _Suite):
    protocol = cks10.cks10_rot()
    channel = ChannelConfig(loss_rate=0.3)
    runs = [run_protocol(protocol, protocol.honest_alice(), protocol.honest_bob(), channel, suite.seed)[1]
            for _ in range(2)]
    honest = protocol.honest_bob()
    batches = [run_trials(protocol, alice_helstrom_attack(), honest, channel, min(suite.trials, 200), suite.seed,
                          parallel=workers).counts for workers in (1, 2)]
    suite.verdict("10-determinism", [runs[0].to_ndjson() == runs[1].to_ndjson(), batches[0] == batches[1]])


CRITERIA = (
    _cks10_correctness, _cks10_helstrom, _cks10_lost_message, _cks10_parity, _unfair,
    _role_switch, _derandomization, _prototype, _composition, _determinism,
)


def run_acceptance(trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED, parallel: Optional[int] = None,
                   generated_at: Optional[str] = None) -> Report:
    suite = _Suite(trials, seed, parallel)
    for criterion in CRITERIA:
        criterion(suite)
    config: Dict[str, Any] = {"command": "selftest", "trials": trials, "seed": seed}
    report = Report(
        schema_version=REPORT_SCHEMA_VERSION,
        version=LTOT_VERSION,
        generated_at=generated_at if generated_at is not None else report_clock(),
        config=config,
        estimates=suite.estimates,
        certificates=suite.certificates,
        compositions=suite.compositions,
        verdicts=suite.verdicts,
    )
    log_simulation_event("selftest_completed", "Acceptance suite finished", level=logging.INFO,
                         component="selftest", passed=report.passed,
                         failed=[v.name for v in suite.verdicts if not v.passed])
    return report
