"""
Composition of a weak coin flip with a Random-OT and its mirror image.

With A_WCF, B_WCF the coin-forcing probabilities and (A_ROT, B_ROT) the
Random-OT profile, the combined protocol has

    A_OT = A_WCF * |A_ROT - B_ROT| + min(A_ROT, B_ROT)
    B_OT = B_WCF * |A_ROT - B_ROT| + min(A_ROT, B_ROT)
"""

from typing import Dict

import numpy as np

from ..config import PUBLISHED_WCF_FORCE
from ..errors import PreconditionError
from ..schemas.domain import CompositionResult

FAIR_TOLERANCE = 1e-12
GRID_STEP = 0.025


def _check_range(**values: float):
    for name, value in values.items():
        if not 0.5 <= value <= 1.0:
            raise PreconditionError(f"{name}={value} must lie in [1/2, 1]")


def compose_theorem1(a_wcf: float, b_wcf: float, a_rot: float, b_rot: float) -> CompositionResult:
    _check_range(a_wcf=a_wcf, b_wcf=b_wcf, a_rot=a_rot, b_rot=b_rot)
    spread = abs(a_rot - b_rot)
    floor = min(a_rot, b_rot)
    a_ot = a_wcf * spread + floor
    b_ot = b_wcf * spread + floor
    eps_ot = max(a_ot, b_ot) - 0.5
    eps_rot = max(a_rot, b_rot) - 0.5
    return CompositionResult(
        a_wcf=a_wcf, b_wcf=b_wcf, a_rot=a_rot, b_rot=b_rot,
        a_ot=a_ot, b_ot=b_ot, eps_ot=eps_ot, eps_rot=eps_rot,
        fair=abs(a_ot - b_ot) <= FAIR_TOLERANCE,
        bias_bound_holds=eps_ot <= eps_rot + FAIR_TOLERANCE,
        strictly_improves=eps_ot < eps_rot - FAIR_TOLERANCE,
    )


def strict_improvement_check(a_wcf: float, b_wcf: float, a_rot: float, b_rot: float) -> bool:
    """True iff the composed bias is strictly below the Random-OT bias."""
    return bool(compose_theorem1(a_wcf, b_wcf, a_rot, b_rot).strictly_improves)


def strict_improvement_expected(a_wcf: float, b_wcf: float, a_rot: float, b_rot: float) -> bool:
    """eps_WCF < 1/2 and A_ROT != B_ROT."""
    return max(a_wcf, b_wcf) < 1.0 - FAIR_TOLERANCE and abs(a_rot - b_rot) > FAIR_TOLERANCE


def corollary2() -> CompositionResult:
    """A fair coin flip of bias 0.3536 composed with a (1, 1/2) Random-OT."""
    return compose_theorem1(PUBLISHED_WCF_FORCE, PUBLISHED_WCF_FORCE, 1.0, 0.5)


def grid_values(step: float = GRID_STEP) -> np.ndarray:
    count = int(round(0.5 / step))
    return np.linspace(0.5, 1.0, count + 1)


def _compose_arrays(a_wcf, b_wcf, a_rot, b_rot):
    spread = np.abs(a_rot - b_rot)
    floor = np.minimum(a_rot, b_rot)
    return a_wcf * spread + floor, b_wcf * spread + floor


def grid_properties(step: float = GRID_STEP) -> Dict[str, int]:
    """Violation counts of the composition identities over the full 4-D grid on [1/2, 1]."""
    values = grid_values(step)
    a_wcf, b_wcf, a_rot, b_rot = np.meshgrid(values, values, values, values, indexing="ij")
    a_ot, b_ot = _compose_arrays(a_wcf, b_wcf, a_rot, b_rot)
    a_ot_swapped, b_ot_swapped = _compose_arrays(b_wcf, a_wcf, a_rot, b_rot)
    spread = np.abs(a_rot - b_rot)
    eps_ot = np.maximum(a_ot, b_ot) - 0.5
    eps_rot = np.maximum(a_rot, b_rot) - 0.5

    fair_coin = np.isclose(a_wcf, b_wcf, rtol=0, atol=FAIR_TOLERANCE)
    improves = eps_ot < eps_rot - FAIR_TOLERANCE
    expected = (np.maximum(a_wcf, b_wcf) < 1.0 - FAIR_TOLERANCE) & (spread > FAIR_TOLERANCE)
    return {
        "points": int(a_wcf.size),
        "symmetry": int(np.count_nonzero((a_ot_swapped != b_ot) | (b_ot_swapped != a_ot))),
        "fairness_transfer": int(np.count_nonzero(fair_coin & (np.abs(a_ot - b_ot) > FAIR_TOLERANCE))),
        "bias_bound": int(np.count_nonzero(eps_ot > eps_rot + FAIR_TOLERANCE)),
        "strict_improvement": int(np.count_nonzero(improves != expected)),
    }
