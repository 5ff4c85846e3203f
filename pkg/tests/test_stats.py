"""
Tests for interval estimates and acceptance bands
"""

import pytest

from ltot.analysis.stats import sigma, uniformity_pvalue, wilson_interval, within_sigma_band, z_score


def test_z_score_for_95_percent():
    assert z_score() == pytest.approx(1.959964, abs=1e-6)


def test_wilson_interval_contains_estimate():
    low, high = wilson_interval(750, 1000)
    assert low < 0.75 < high
    assert high - low == pytest.approx(2 * 1.96 * (0.75 * 0.25 / 1000) ** 0.5, abs=2e-3)


def test_wilson_interval_edges():
    low, high = wilson_interval(0, 100)
    assert low == 0.0 and high > 0.0
    low, high = wilson_interval(100, 100)
    assert high == 1.0 and low < 1.0


def test_wilson_interval_rejects_bad_counts():
    with pytest.raises(ValueError):
        wilson_interval(1, 0)
    with pytest.raises(ValueError):
        wilson_interval(11, 10)


def test_sigma_band():
    assert sigma(0.75, 10000) == pytest.approx(0.00433, abs=1e-5)
    assert within_sigma_band(0.76, 0.75, 10000)
    assert not within_sigma_band(0.77, 0.75, 10000)


def test_degenerate_band_demands_exact_match():
    assert within_sigma_band(1.0, 1.0, 500)
    assert not within_sigma_band(0.998, 1.0, 500)
    assert within_sigma_band(0.0, 0.0, 500)


def test_uniformity_pvalue():
    assert uniformity_pvalue([250, 250, 250, 250]) == pytest.approx(1.0)
    assert uniformity_pvalue([400, 100, 250, 250]) < 1e-6
    assert uniformity_pvalue([0, 0]) == 1.0
