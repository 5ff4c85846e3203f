"""
Scoring of attack runs and attack reports.
"""

import logging
from typing import Optional

from ..engine.messages import ProtocolOutcome
from ..engine.strategy import ProtocolDescriptor, Strategy
from ..engine.transcript import Transcript
from ..analysis.stats import within_sigma_band
from ..logging_config import log_simulation_event
from ..schemas.domain import TrialStats
from ..schemas.report import AttackReport
from .attacks import TARGET_B, TARGET_COIN, TARGET_PARITY

SUCCESS = "success"
FAILURE = "failure"


def realized_target(strategy: Strategy, outcome: ProtocolOutcome) -> int:
    """The honest party's secret the attacker is trying to learn."""
    honest = outcome.output_of(strategy.role.peer)
    if strategy.target == TARGET_B:
        return honest.b
    if strategy.target == TARGET_PARITY:
        return honest.x0 ^ honest.x1
    if strategy.target == TARGET_COIN:
        return honest.c
    raise ValueError(f"strategy {strategy.name} has no target")


def attack_succeeded(strategy: Strategy, outcome: ProtocolOutcome) -> bool:
    """The run completed and the attacker's guess equals the honest party's realized secret."""
    if not outcome.completed:
        return False
    return outcome.output_of(strategy.role).guess == realized_target(strategy, outcome)


def success_classifier(strategy: Strategy):
    def classify(outcome: ProtocolOutcome, transcript: Transcript) -> str:
        if not outcome.completed:
            return outcome.label
        return SUCCESS if attack_succeeded(strategy, outcome) else FAILURE
    return classify


def build_attack_report(strategy: Strategy, protocol: ProtocolDescriptor, stats: TrialStats) -> AttackReport:
    if strategy.predicted is None:
        raise ValueError(f"strategy {strategy.name} carries no prediction")
    within = within_sigma_band(stats.estimate, strategy.predicted, stats.n)
    certificates = list(strategy.certificates)
    passed = within and all(c.passed for c in certificates)
    report = AttackReport(
        attack=strategy.name,
        protocol=protocol.name,
        predicted=strategy.predicted,
        empirical=stats,
        certificates=certificates,
        within_band=within,
        status="PASSED" if passed else "FAILED",
    )
    if not passed:
        log_simulation_event("prediction_mismatch", "Attack report failed", level=logging.WARNING,
                             component="adversaries", attack=strategy.name, protocol=protocol.name,
                             predicted=strategy.predicted, estimate=stats.estimate, n=stats.n)
    return report


def scored_strategy(alice: Strategy, bob: Strategy) -> Optional[Strategy]:
    """The side whose guesses are scored: the one carrying a target, Alice first."""
    for strategy in (alice, bob):
        if strategy.target is not None:
            return strategy
    return None
