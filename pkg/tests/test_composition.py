"""
Tests for the coin-flip composition identities
"""

import pytest

from ltot.analysis.composition import (
    compose_theorem1, corollary2, grid_properties, grid_values, strict_improvement_check,
    strict_improvement_expected,
)
from ltot.errors import PreconditionError


def test_published_combination():
    result = corollary2()
    assert result.a_ot == pytest.approx(0.9268)
    assert result.b_ot == pytest.approx(0.9268)
    assert result.eps_ot == pytest.approx(0.4268)
    assert result.fair
    assert result.strictly_improves


def test_fair_coin_averages_the_profile():
    result = compose_theorem1(0.5, 0.5, 1.0, 0.5)
    assert (result.a_ot, result.b_ot) == (pytest.approx(0.75), pytest.approx(0.75))
    assert result.eps_ot == pytest.approx(0.25)
    assert result.eps_rot == pytest.approx(0.5)


def test_symmetric_random_ot_is_unchanged():
    result = compose_theorem1(0.9, 0.6, 0.8, 0.8)
    assert (result.a_ot, result.b_ot) == (pytest.approx(0.8), pytest.approx(0.8))
    assert not result.strictly_improves


def test_fully_biased_coin_keeps_the_worse_side():
    result = compose_theorem1(1.0, 1.0, 0.9, 0.6)
    assert (result.a_ot, result.b_ot) == (pytest.approx(0.9), pytest.approx(0.9))
    assert result.bias_bound_holds
    assert not result.strictly_improves


def test_unfair_coin_transfers_its_unfairness():
    result = compose_theorem1(0.9, 0.6, 1.0, 0.5)
    assert result.a_ot == pytest.approx(0.95)
    assert result.b_ot == pytest.approx(0.8)
    assert not result.fair


@pytest.mark.parametrize("args", [(0.4, 0.5, 0.5, 0.5), (0.5, 1.1, 0.5, 0.5), (0.5, 0.5, 0.49, 0.5),
                                  (0.5, 0.5, 0.5, 2.0)])
def test_inputs_must_lie_in_range(args):
    with pytest.raises(PreconditionError):
        compose_theorem1(*args)


@pytest.mark.parametrize("args, expected", [
    ((0.8536, 0.8536, 1.0, 0.5), True),
    ((0.5, 0.7, 0.6, 0.9), True),
    ((1.0, 0.5, 1.0, 0.5), False),
    ((0.7, 0.7, 0.75, 0.75), False),
])
def test_strict_improvement(args, expected):
    assert strict_improvement_check(*args) is expected
    assert strict_improvement_expected(*args) is expected


def test_grid_has_no_violations():
    assert len(grid_values()) == 21
    properties = grid_properties()
    assert properties.pop("points") == 21 ** 4
    assert properties == {"symmetry": 0, "fairness_transfer": 0, "bias_bound": 0, "strict_improvement": 0}
