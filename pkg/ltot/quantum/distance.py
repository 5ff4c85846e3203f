"""Distance measures and two-state discrimination bounds."""

from typing import Sequence

import numpy as np

from ..errors import DimensionMismatchError
from .states import DensityMatrix, StateVector


def _check_pair(r0: DensityMatrix, r1: DensityMatrix):
    if r0.dims != r1.dims:
        raise DimensionMismatchError(f"dims {list(r0.dims)} vs {list(r1.dims)}")


def trace_distance(r0: DensityMatrix, r1: DensityMatrix) -> float:
    """(1/2) * sum |eigenvalues(r0 - r1)|, clipped to [0, 1]."""
    _check_pair(r0, r1)
    eig = np.linalg.eigvalsh(r0.matrix - r1.matrix)
    return float(min(1.0, max(0.0, 0.5 * np.abs(eig).sum())))


def helstrom(r0: DensityMatrix, r1: DensityMatrix) -> float:
    """Optimal success probability of telling r0 from r1 under a uniform prior."""
    return 0.5 + 0.5 * trace_distance(r0, r1)


def gram_matrix(states: Sequence[StateVector]) -> np.ndarray:
    amps = np.array([s.amplitudes for s in states])
    return amps.conj() @ amps.T


def gram_deviation(states: Sequence[StateVector]) -> float:
    """Largest entry of |G - I|; zero iff the states are orthonormal."""
    g = gram_matrix(states)
    return float(np.abs(g - np.eye(len(states))).max())


def tensor_power(rho: DensityMatrix, k: int) -> DensityMatrix:
    out = rho
    for _ in range(k - 1):
        out = out.tensor(rho)
    return out
