"""
Batches of independent executions.

Trial ``i`` runs with ``trial_seed(base_seed, i)``, so counts do not depend
on how trials are scheduled across the worker pool.
"""

import contextvars
import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Union

from ..analysis.stats import wilson_interval
from ..config import PARALLEL
from ..errors import PreconditionError
from ..logging_config import log_simulation_event, run_id_var
from ..schemas.domain import TrialStats
from .messages import ChannelConfig, ProtocolOutcome
from .runner import resolve_protocol, run_protocol
from .strategy import ProtocolDescriptor, Strategy
from .transcript import Transcript

Classifier = Callable[[ProtocolOutcome, Transcript], str]

_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def trial_seed(base_seed: int, i: int) -> int:
    return splitmix64((splitmix64(base_seed & _MASK64) + i) & _MASK64)


def outcome_label(outcome: ProtocolOutcome, transcript: Transcript) -> str:
    return outcome.label


@dataclass
class TrialCounts:
    protocol: str
    n: int
    base_seed: int
    counts: Counter = field(default_factory=Counter)
    restarts: int = 0

    def frequency(self, label: str) -> float:
        return self.counts[label] / self.n

    @property
    def frequencies(self) -> Dict[str, float]:
        return {label: self.counts[label] / self.n for label in sorted(self.counts)}

    def stats(self, label: str) -> TrialStats:
        successes = self.counts[label]
        low, high = wilson_interval(successes, self.n)
        return TrialStats(label=label, n=self.n, successes=successes, estimate=successes / self.n,
                          ci_low=low, ci_high=high, seed=self.base_seed)

    def intervals(self) -> Dict[str, TrialStats]:
        return {label: self.stats(label) for label in sorted(self.counts)}


def _run_chunk(descriptor, alice, bob, channel, base_seed, indices, classify):
    counts: Counter = Counter()
    restarts = 0
    for i in indices:
        outcome, transcript = run_protocol(descriptor, alice, bob, channel, trial_seed(base_seed, i))
        counts[classify(outcome, transcript)] += 1
        restarts += transcript.restart_count
    return counts, restarts


def run_trials(protocol: Union[str, ProtocolDescriptor], alice: Strategy, bob: Strategy,
               channel: Optional[ChannelConfig] = None, n: int = 1, base_seed: int = 0,
               classify: Optional[Classifier] = None, parallel: Optional[int] = None) -> TrialCounts:
    if n < 1:
        raise PreconditionError("trial count must be at least 1")
    descriptor = resolve_protocol(protocol)
    channel = channel or ChannelConfig()
    classify = classify or outcome_label
    workers = max(1, parallel if parallel is not None else PARALLEL)

    token = run_id_var.set(f"{descriptor.name}-{base_seed}")
    try:
        result = TrialCounts(protocol=descriptor.name, n=n, base_seed=base_seed)
        if workers == 1:
            chunks = [_run_chunk(descriptor, alice, bob, channel, base_seed, range(n), classify)]
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                futures = [
                    pool.submit(contextvars.copy_context().run, _run_chunk, descriptor, alice, bob,
                                channel, base_seed, range(w, n, workers), classify)
                    for w in range(workers)
                ]
                chunks = [f.result() for f in futures]
        for counts, restarts in chunks:
            result.counts.update(counts)
            result.restarts += restarts

        log_simulation_event("trials_completed", "Trial batch completed", level=logging.INFO,
                             component="trials", protocol=descriptor.name, n=n, base_seed=base_seed,
                             workers=workers, counts=dict(result.counts), restarts=result.restarts)
        return result
    finally:
        run_id_var.reset(token)
