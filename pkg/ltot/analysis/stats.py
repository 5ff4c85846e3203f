"""
Interval estimates and acceptance bands for Monte Carlo frequencies.
"""

from math import sqrt
from typing import Optional, Tuple

from scipy.stats import chisquare, norm

from ..config import CONFIDENCE_LEVEL, SIGMA_BAND


def z_score(confidence: float = CONFIDENCE_LEVEL) -> float:
    return float(norm.ppf(0.5 + confidence / 2))


def wilson_interval(successes: int, n: int, z: Optional[float] = None) -> Tuple[float, float]:
    """Wilson score interval for a binomial proportion (95% by default)."""
    if n <= 0:
        raise ValueError("n must be positive")
    if not 0 <= successes <= n:
        raise ValueError("successes must lie in [0, n]")
    z = z_score() if z is None else z
    p = successes / n
    denom = 1 + z * z / n
    center = (p + z * z / (2 * n)) / denom
    half = z * sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom
    low = max(0.0, min(center - half, p))
    high = min(1.0, max(center + half, p))
    return low, high


def sigma(predicted: float, n: int) -> float:
    return sqrt(predicted * (1 - predicted) / n)


def within_sigma_band(estimate: float, predicted: float, n: int, k: float = SIGMA_BAND) -> bool:
    """|estimate - predicted| <= k sigma; exact equality when predicted is 0 or 1."""
    band = k * sigma(predicted, n)
    if band == 0.0:
        return abs(estimate - predicted) <= 1e-12
    return abs(estimate - predicted) <= band + 1e-12


def uniformity_pvalue(counts) -> float:
    """Chi-square goodness of fit of ``counts`` against the uniform distribution."""
    counts = list(counts)
    if sum(counts) == 0:
        return 1.0
    return float(chisquare(counts).pvalue)
