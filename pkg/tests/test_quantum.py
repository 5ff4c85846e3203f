"""
Tests for the exact quantum core: states, operators, measurements, distances
"""

from collections import Counter

import numpy as np
import pytest

from ltot.errors import DimensionMismatchError, StateError
from ltot.quantum import (
    DensityMatrix, Povm, StateVector, UnitaryOp, apply_unitary, gram_deviation, helstrom, measure,
    outcome_probabilities, partial_trace, tensor, tensor_power, trace_distance,
)
from ltot.quantum.gates import (
    BELL_LABELS, H, PHI_PLUS_QUBITS, SQRT_HALF, X, Z, Z2, Z3, alice_view_cks10, bell_after_encoding,
    bell_povm, decoding_povm, encoded_qubit, ket, pauli_encoding, phi_projector_povm, phi_state,
    qutrit_phase, unfair_alice_view,
)


def test_state_requires_unit_norm():
    with pytest.raises(StateError):
        StateVector((2,), np.array([1.0, 1.0]))


def test_state_rejects_unsupported_dims():
    with pytest.raises(StateError):
        StateVector((4,), np.array([1, 0, 0, 0]))


def test_state_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        StateVector((2, 3), np.array([1.0, 0.0]))


def test_from_terms_normalizes():
    psi = StateVector.from_terms((2,), {(0,): 1.0, (1,): 1.0}, normalize=True)
    assert psi.norm() == pytest.approx(1.0)
    assert psi.probabilities() == pytest.approx([0.5, 0.5])


def test_unitary_validation():
    with pytest.raises(StateError):
        UnitaryOp(np.array([[1, 1], [0, 1]]), "shear")
    with pytest.raises(DimensionMismatchError):
        UnitaryOp(np.ones((2, 3)), "rect")


def test_density_matrix_validation():
    with pytest.raises(StateError):
        DensityMatrix((2,), np.array([[0.5, 0.0], [0.0, 0.4]]))
    with pytest.raises(StateError):
        DensityMatrix((2,), np.array([[1.5, 0.0], [0.0, -0.5]]))


def test_povm_must_be_complete():
    with pytest.raises(StateError):
        Povm((np.diag([1.0, 0.0]),), "partial")


def test_apply_unitary_on_one_factor():
    psi = tensor(ket(0), ket(0))
    out = apply_unitary(psi, X, [1])
    assert out.equals_up_to_phase(ket(0, 1))


def test_apply_unitary_dimension_check():
    with pytest.raises(DimensionMismatchError):
        apply_unitary(ket(0), qutrit_phase(0, 1), [0])
    with pytest.raises(DimensionMismatchError):
        apply_unitary(ket(0), X, [1])


def test_partial_trace_of_bell_pair_is_maximally_mixed():
    rho = partial_trace(PHI_PLUS_QUBITS, [0])
    assert rho.allclose(DensityMatrix.maximally_mixed((2,)))


def test_partial_trace_of_density_matches_vector():
    psi = apply_unitary(tensor(ket(0), ket(1)), H, [0])
    from_vector = partial_trace(psi, [1])
    from_density = partial_trace(psi.density(), [1])
    assert from_vector.allclose(from_density)


def test_measure_lueders_update(rng):
    plus = apply_unitary(ket(0), H, [0])
    result = measure(plus, Z2, rng)
    assert result.probabilities == pytest.approx((0.5, 0.5))
    assert result.state.equals_up_to_phase(ket(result.outcome))


def test_measure_frequencies(rng):
    plus = apply_unitary(ket(0), H, [0])
    counts = Counter(measure(plus, Z2, rng).outcome for _ in range(4000))
    assert counts[0] / 4000 == pytest.approx(0.5, abs=4 * np.sqrt(0.25 / 4000))


def test_measure_subsystem_of_bell_pair(rng):
    result = measure(PHI_PLUS_QUBITS, Z2, rng, targets=[0])
    assert result.state.equals_up_to_phase(ket(result.outcome, result.outcome))


def test_outcome_probabilities_without_sampling():
    assert outcome_probabilities(ket(1), Z2) == pytest.approx((0.0, 1.0))


def test_trace_distance_and_helstrom():
    zero, one = ket(0).density(), ket(1).density()
    assert trace_distance(zero, one) == pytest.approx(1.0)
    assert helstrom(zero, zero) == pytest.approx(0.5)
    plus = apply_unitary(ket(0), H, [0]).density()
    assert trace_distance(zero, plus) == pytest.approx(SQRT_HALF)


def test_trace_distance_requires_matching_dims():
    with pytest.raises(DimensionMismatchError):
        trace_distance(ket(0).density(), ket(0, dims=(3,)).density())


def test_qutrit_view_helstrom_is_three_quarters():
    assert helstrom(alice_view_cks10(0), alice_view_cks10(1)) == pytest.approx(0.75, abs=1e-9)


def test_qutrit_phases_act_on_second_factor():
    phased = apply_unitary(phi_state(1), qutrit_phase(0, 1), [1])
    # x_1 = 1 flips the sign of |11>: Bob's projector now fails with certainty
    assert outcome_probabilities(phased, phi_projector_povm(1)) == pytest.approx((0.0, 1.0))


def test_unfair_views_identical():
    assert trace_distance(unfair_alice_view(0), unfair_alice_view(1)) == pytest.approx(0.0, abs=1e-12)
    assert trace_distance(tensor_power(unfair_alice_view(0), 3),
                          tensor_power(unfair_alice_view(1), 3)) == pytest.approx(0.0, abs=1e-12)


def test_pauli_encoding_decodes_x_b():
    for b, d, x0, x1 in np.ndindex(2, 2, 2, 2):
        returned = apply_unitary(encoded_qubit(b, d), pauli_encoding(x0, x1), [0])
        probabilities = outcome_probabilities(returned, decoding_povm(b, d))
        assert probabilities[x1 if b else x0] == pytest.approx(1.0)


def test_bell_states_orthonormal():
    assert gram_deviation([bell_after_encoding(*xs) for xs in BELL_LABELS]) == pytest.approx(0.0, abs=1e-12)
    assert len(bell_povm()) == 4
    assert bell_povm().projective


def test_pauli_encoding_order():
    assert np.allclose(pauli_encoding(1, 1).matrix, (X @ Z).matrix)


def test_z3_is_projective():
    assert Z3.projective
    assert Z3.dim == 3
