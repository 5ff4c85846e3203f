"""
Prometheus metrics for simulation runs
"""

from prometheus_client import Counter, Histogram, generate_latest

TRIALS_TOTAL = Counter(
    'ltot_trials_total',
    'Total number of protocol executions',
    ['protocol', 'outcome']
)

RESTARTS_TOTAL = Counter(
    'ltot_restarts_total',
    'Total number of loss-induced protocol restarts',
    ['protocol']
)

MESSAGES_LOST_TOTAL = Counter(
    'ltot_messages_lost_total',
    'Messages genuinely lost by the channel',
    ['protocol', 'kind']
)

LOSS_DECLARATIONS_TOTAL = Counter(
    'ltot_loss_declarations_total',
    'Loss declarations issued by a party without a genuine loss',
    ['protocol']
)

TRIAL_ROUNDS = Histogram(
    'ltot_trial_rounds',
    'Message rounds per protocol execution',
    ['protocol'],
    buckets=[2, 4, 8, 16, 32, 64, 128, 256]
)


class SimulationMetrics:
    """Service for recording simulation metrics."""

    def record_execution(self, protocol: str, outcome: str, rounds: int):
        TRIALS_TOTAL.labels(protocol=protocol, outcome=outcome).inc()
        TRIAL_ROUNDS.labels(protocol=protocol).observe(rounds)

    def increment_restarts(self, protocol: str, count: int = 1):
        RESTARTS_TOTAL.labels(protocol=protocol).inc(count)

    def increment_lost(self, protocol: str, kind: str, count: int = 1):
        MESSAGES_LOST_TOTAL.labels(protocol=protocol, kind=kind).inc(count)

    def increment_declarations(self, protocol: str, count: int = 1):
        LOSS_DECLARATIONS_TOTAL.labels(protocol=protocol).inc(count)

    def get_metrics(self) -> bytes:
        """Get Prometheus metrics in text format."""
        return generate_latest()

    def write_textfile(self, path: str):
        with open(path, "wb") as f:
            f.write(self.get_metrics())


# Global metrics instance
simulation_metrics = SimulationMetrics()
