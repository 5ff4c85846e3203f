import numpy as np
import pytest

from ltot.engine import ChannelConfig, Party, Strategy, run_protocol
from ltot.protocols import cks10_rot, unfair_lt_rot

# Statistical tests use a slightly wider band than the verdict policy so a
# fixed seed is never the reason a test is flaky across numpy versions.
TEST_SIGMA = 4.0


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def cks10():
    return cks10_rot()


@pytest.fixture
def unfair():
    return unfair_lt_rot()


@pytest.fixture
def lossy():
    return ChannelConfig(loss_rate=0.3)


@pytest.fixture
def run_honest():
    """Run one honest execution of a descriptor."""
    def run(descriptor, channel=None, seed=0):
        return run_protocol(descriptor, descriptor.honest_alice(), descriptor.honest_bob(), channel, seed)
    return run


@pytest.fixture
def scripted():
    """Build a strategy from a bare generator program."""
    def build(role, program, name="scripted"):
        return Strategy(name, role, program, honest=False)
    return build


@pytest.fixture
def alice():
    return Party.ALICE


@pytest.fixture
def bob():
    return Party.BOB


@pytest.fixture
def near():
    """True when a Monte Carlo estimate sits within the test band of its prediction."""
    from ltot.analysis.stats import within_sigma_band

    def check(stats, predicted):
        return within_sigma_band(stats.estimate, predicted, stats.n, k=TEST_SIGMA)
    return check
