"""
Acceptance suite runs; slow, deselected by default
"""

import pytest

from ltot.analysis.acceptance import run_acceptance

pytestmark = pytest.mark.slow


def test_acceptance_suite_passes():
    report = run_acceptance(trials=2000, seed=7, parallel=2, generated_at="")
    failed = [v.name for v in report.verdicts if not v.passed]
    assert not failed
    assert report.passed
    assert all(c.passed for c in report.certificates)
    assert report.compositions


def test_acceptance_report_is_reproducible():
    first = run_acceptance(trials=200, seed=11, parallel=1, generated_at="")
    second = run_acceptance(trials=200, seed=11, parallel=3, generated_at="")
    assert first.model_dump_json() == second.model_dump_json()
