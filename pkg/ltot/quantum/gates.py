"""
Named states, unitaries and measurements used by the protocols.
"""

from functools import lru_cache
from typing import Tuple

import numpy as np

from .states import DensityMatrix, Povm, StateVector, UnitaryOp, apply_unitary, partial_trace

SQRT_HALF = 1.0 / np.sqrt(2.0)

I2 = UnitaryOp(np.eye(2), "I")
X = UnitaryOp(np.array([[0, 1], [1, 0]]), "X")
Z = UnitaryOp(np.array([[1, 0], [0, -1]]), "Z")
H = UnitaryOp(np.array([[1, 1], [1, -1]]) * SQRT_HALF, "H")

Z2 = Povm.computational(2)
Z3 = Povm.computational(3)


def ket(*digits: int, dims: Tuple[int, ...] = None) -> StateVector:
    """|digits> over qubits, or over ``dims`` when given."""
    dims = dims or (2,) * len(digits)
    return StateVector.basis(dims, digits)


@lru_cache(maxsize=None)
def qutrit_phase(x0: int, x1: int) -> UnitaryOp:
    """|0> -> (-1)^x0 |0>, |1> -> (-1)^x1 |1>, |2> -> |2>"""
    return UnitaryOp(np.diag([(-1) ** x0, (-1) ** x1, 1]), f"P{x0}{x1}")


@lru_cache(maxsize=None)
def pauli_encoding(x0: int, x1: int) -> UnitaryOp:
    """X^x0 Z^x1 (Z applied first)."""
    u = I2
    if x1:
        u = Z @ u
    if x0:
        u = X @ u
    return UnitaryOp(u.matrix, f"X{x0}Z{x1}")


@lru_cache(maxsize=None)
def hadamard_power(b: int) -> UnitaryOp:
    return H if b else I2


@lru_cache(maxsize=None)
def phi_state(b: int, amplitude: float = SQRT_HALF) -> StateVector:
    """a|bb> + sqrt(1 - a^2)|22> over two qutrits."""
    rest = np.sqrt(max(0.0, 1.0 - amplitude ** 2))
    return StateVector.from_terms((3, 3), {(b, b): amplitude, (2, 2): rest})


@lru_cache(maxsize=None)
def phi_projector_povm(b: int, amplitude: float = SQRT_HALF) -> Povm:
    """{Pi_0 = |phi_b><phi_b|, Pi_1 = 1 - Pi_0}"""
    return Povm.from_vectors([phi_state(b, amplitude)], name=f"Pi(phi_{b})")


@lru_cache(maxsize=None)
def alice_view_cks10(b: int, amplitude: float = SQRT_HALF) -> DensityMatrix:
    """Reduced state of the qutrit Bob sends in the qutrit Random-OT."""
    return partial_trace(phi_state(b, amplitude), keep=[1])


@lru_cache(maxsize=None)
def encoded_qubit(b: int, d: int) -> StateVector:
    """H^b |d>"""
    return apply_unitary(ket(d), hadamard_power(b), [0])


@lru_cache(maxsize=None)
def decoding_povm(b: int, d: int) -> Povm:
    """Projective measurement in {H^b|d>, H^b|d xor 1>}; outcome i means x_b = i."""
    return Povm.from_vectors([encoded_qubit(b, d), encoded_qubit(b, d ^ 1)],
                             name=f"H{b}basis{d}", complete=False)


def unfair_alice_view(b: int) -> DensityMatrix:
    """Alice's view of the qubit H^b|d> with d uniform."""
    return DensityMatrix.mixture([(0.5, encoded_qubit(b, 0)), (0.5, encoded_qubit(b, 1))])


PHI_PLUS_QUBITS = StateVector.from_terms((2, 2), {(0, 0): SQRT_HALF, (1, 1): SQRT_HALF})
PHI_PLUS_QUTRITS = StateVector.from_terms((3, 3), {(0, 0): SQRT_HALF, (1, 1): SQRT_HALF})


@lru_cache(maxsize=None)
def bell_after_encoding(x0: int, x1: int) -> StateVector:
    """(I ⊗ X^x0 Z^x1)|Phi+>: the four Bell states indexed by Alice's bits."""
    return apply_unitary(PHI_PLUS_QUBITS, pauli_encoding(x0, x1), [1])


BELL_LABELS = ((0, 0), (0, 1), (1, 0), (1, 1))


@lru_cache(maxsize=None)
def bell_povm() -> Povm:
    """Bell measurement, outcome i corresponds to BELL_LABELS[i]."""
    return Povm.from_vectors([bell_after_encoding(*xs) for xs in BELL_LABELS],
                             name="bell", complete=False)


@lru_cache(maxsize=None)
def parity_state(parity: int) -> StateVector:
    """(|00> + (-1)^parity |11>)/sqrt2 over two qutrits."""
    return StateVector.from_terms((3, 3), {(0, 0): SQRT_HALF, (1, 1): SQRT_HALF * (-1) ** parity})


@lru_cache(maxsize=None)
def parity_povm() -> Povm:
    """Outcome 0: even parity class, outcome 1: everything else."""
    return Povm.from_vectors([parity_state(0)], name="parity")
