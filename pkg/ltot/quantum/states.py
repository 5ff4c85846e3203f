"""
Exact finite-dimensional quantum states, operators and measurements.

States live on small composites of qubits and qutrits; every object is an
immutable value validated on construction against ``config.TOLERANCE``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Dict, Iterable, NamedTuple, Sequence, Tuple, Union

import numpy as np

from ..config import TOLERANCE
from ..errors import DimensionMismatchError, StateError

ALLOWED_FACTOR_DIMS = (2, 3)


def _check_dims(dims: Iterable[int]) -> Tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if not dims:
        raise StateError("a state needs at least one factor")
    bad = [d for d in dims if d not in ALLOWED_FACTOR_DIMS]
    if bad:
        raise StateError(f"factor dimensions must be 2 or 3, got {list(dims)}")
    return dims


def _check_targets(dims: Sequence[int], targets: Sequence[int]) -> Tuple[int, ...]:
    targets = tuple(int(t) for t in targets)
    if not targets:
        raise DimensionMismatchError("at least one subsystem index is required")
    if len(set(targets)) != len(targets):
        raise DimensionMismatchError(f"repeated subsystem index in {list(targets)}")
    for t in targets:
        if t < 0 or t >= len(dims):
            raise DimensionMismatchError(f"subsystem index {t} out of range for dims {list(dims)}")
    return targets


def _apply_matrix(amplitudes: np.ndarray, dims: Sequence[int], matrix: np.ndarray,
                  targets: Sequence[int]) -> np.ndarray:
    """Apply ``matrix`` to the ``targets`` factors of a vector, identity elsewhere."""
    k = len(targets)
    tdims = [dims[t] for t in targets]
    psi = amplitudes.reshape(dims)
    op = matrix.reshape(tdims + tdims)
    out = np.tensordot(op, psi, axes=(list(range(k, 2 * k)), list(targets)))
    out = np.moveaxis(out, list(range(k)), list(targets))
    return out.reshape(-1)


def _psd_sqrt(matrix: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(matrix)
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


@dataclass(frozen=True, eq=False)
class StateVector:
    dims: Tuple[int, ...]
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        dims = _check_dims(self.dims)
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != prod(dims):
            raise DimensionMismatchError(
                f"{amps.size} amplitudes do not match dims {list(dims)} (expected {prod(dims)})")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > TOLERANCE:
            raise StateError(f"state is not normalized (squared norm {norm2:.12f})")
        amps.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def basis(cls, dims: Sequence[int], digits: Sequence[int]) -> "StateVector":
        """Computational basis state |digits> over ``dims``."""
        dims = _check_dims(dims)
        if len(digits) != len(dims) or any(not 0 <= d < n for d, n in zip(digits, dims)):
            raise DimensionMismatchError(f"basis label {list(digits)} invalid for dims {list(dims)}")
        amps = np.zeros(prod(dims), dtype=complex)
        amps[np.ravel_multi_index(tuple(digits), dims)] = 1.0
        return cls(dims, amps)

    @classmethod
    def from_terms(cls, dims: Sequence[int], terms: Dict[Tuple[int, ...], complex],
                   normalize: bool = False) -> "StateVector":
        """Superposition ``sum amp |digits>``; ``normalize`` rescales to unit norm."""
        dims = _check_dims(dims)
        amps = np.zeros(prod(dims), dtype=complex)
        for digits, amp in terms.items():
            amps[np.ravel_multi_index(tuple(digits), dims)] += amp
        if normalize:
            norm = np.linalg.norm(amps)
            if norm == 0:
                raise StateError("cannot normalize the zero vector")
            amps = amps / norm
        return cls(dims, amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def inner(self, other: "StateVector") -> complex:
        """<self|other>"""
        if self.dims != other.dims:
            raise DimensionMismatchError(f"dims {list(self.dims)} vs {list(other.dims)}")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def equals_up_to_phase(self, other: "StateVector", tol: float = TOLERANCE) -> bool:
        return abs(abs(self.inner(other)) - 1.0) <= tol

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def density(self) -> "DensityMatrix":
        return DensityMatrix(self.dims, np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    dims: Tuple[int, ...]
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        dims = _check_dims(self.dims)
        m = np.asarray(self.matrix, dtype=complex)
        n = prod(dims)
        if m.shape != (n, n):
            raise DimensionMismatchError(f"matrix shape {m.shape} does not match dims {list(dims)}")
        if not np.allclose(m, m.conj().T, atol=TOLERANCE, rtol=0):
            raise StateError("density matrix is not Hermitian")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > TOLERANCE:
            raise StateError(f"density matrix trace is {tr.real:.12f}, expected 1")
        if np.linalg.eigvalsh(m).min() < -TOLERANCE:
            raise StateError("density matrix has a negative eigenvalue")
        m.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def mixture(cls, weighted: Sequence[Tuple[float, "StateVector"]]) -> "DensityMatrix":
        """Convex combination of pure states."""
        first = weighted[0][1]
        m = sum(p * np.outer(s.amplitudes, s.amplitudes.conj()) for p, s in weighted)
        return cls(first.dims, m)

    @classmethod
    def maximally_mixed(cls, dims: Sequence[int]) -> "DensityMatrix":
        dims = _check_dims(dims)
        n = prod(dims)
        return cls(dims, np.eye(n, dtype=complex) / n)

    def tensor(self, other: "DensityMatrix") -> "DensityMatrix":
        return DensityMatrix(self.dims + other.dims, np.kron(self.matrix, other.matrix))

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)

    def allclose(self, other: "DensityMatrix", tol: float = TOLERANCE) -> bool:
        return self.dims == other.dims and np.allclose(self.matrix, other.matrix, atol=tol, rtol=0)


@dataclass(frozen=True, eq=False)
class UnitaryOp:
    matrix: np.ndarray = field(repr=False)
    name: str = "U"

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatchError(f"unitary must be square, got shape {m.shape}")
        if not np.allclose(m.conj().T @ m, np.eye(m.shape[0]), atol=TOLERANCE, rtol=0):
            raise StateError(f"{self.name} is not unitary")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __matmul__(self, other: "UnitaryOp") -> "UnitaryOp":
        """Composition: (self @ other) applies ``other`` first."""
        return UnitaryOp(self.matrix @ other.matrix, f"{self.name}{other.name}")

    def kron(self, other: "UnitaryOp") -> "UnitaryOp":
        return UnitaryOp(np.kron(self.matrix, other.matrix), f"{self.name}⊗{other.name}")


@dataclass(frozen=True, eq=False)
class Povm:
    elements: Tuple[np.ndarray, ...] = field(repr=False)
    name: str = "povm"
    projective: bool = False

    def __post_init__(self):
        elements = tuple(np.asarray(e, dtype=complex) for e in self.elements)
        if not elements:
            raise StateError("a POVM needs at least one element")
        n = elements[0].shape[0]
        for e in elements:
            if e.shape != (n, n):
                raise DimensionMismatchError("POVM elements must share one square shape")
            if not np.allclose(e, e.conj().T, atol=TOLERANCE, rtol=0):
                raise StateError(f"{self.name}: element is not Hermitian")
            if np.linalg.eigvalsh(e).min() < -TOLERANCE:
                raise StateError(f"{self.name}: element is not positive semidefinite")
        if not np.allclose(sum(elements), np.eye(n), atol=TOLERANCE, rtol=0):
            raise StateError(f"{self.name}: elements do not sum to identity")
        projective = all(np.allclose(e @ e, e, atol=TOLERANCE, rtol=0) for e in elements)
        for e in elements:
            e.setflags(write=False)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "projective", projective)
        # Measurement operators: the elements themselves for projectors, sqrt otherwise
        kraus = elements if projective else tuple(_psd_sqrt(e) for e in elements)
        object.__setattr__(self, "_kraus", kraus)

    @property
    def dim(self) -> int:
        return self.elements[0].shape[0]

    def __len__(self) -> int:
        return len(self.elements)

    @classmethod
    def from_vectors(cls, vectors: Sequence[StateVector], name: str = "projective",
                     complete: bool = True) -> "Povm":
        """Rank-one projectors onto ``vectors``; ``complete`` appends 1 - sum as a last outcome."""
        elements = [np.outer(v.amplitudes, v.amplitudes.conj()) for v in vectors]
        if complete:
            rest = np.eye(elements[0].shape[0]) - sum(elements)
            if np.abs(rest).max() > TOLERANCE:
                elements.append(rest)
        return cls(tuple(elements), name)

    @classmethod
    def computational(cls, dim: int) -> "Povm":
        elements = []
        for i in range(dim):
            e = np.zeros((dim, dim), dtype=complex)
            e[i, i] = 1.0
            elements.append(e)
        return cls(tuple(elements), f"Z{dim}")


class MeasurementResult(NamedTuple):
    outcome: int
    state: StateVector
    probabilities: Tuple[float, ...]


StateLike = Union[StateVector, DensityMatrix]


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """Kronecker product of two pure states, factor lists concatenated."""
    return StateVector(a.dims + b.dims, np.kron(a.amplitudes, b.amplitudes))


def apply_unitary(state: StateVector, u: UnitaryOp, targets: Sequence[int]) -> StateVector:
    targets = _check_targets(state.dims, targets)
    expected = prod(state.dims[t] for t in targets)
    if u.dim != expected:
        raise DimensionMismatchError(
            f"{u.name} acts on dimension {u.dim}, targets {list(targets)} span {expected}")
    return StateVector(state.dims, _apply_matrix(state.amplitudes, state.dims, u.matrix, targets))


def partial_trace(state: StateLike, keep: Sequence[int]) -> DensityMatrix:
    """Reduced density matrix over ``keep`` (in the order given)."""
    keep = _check_targets(state.dims, keep)
    dims = state.dims
    traced = [i for i in range(len(dims)) if i not in keep]
    kdims = tuple(dims[i] for i in keep)
    dk = prod(kdims)

    if isinstance(state, StateVector):
        psi = np.moveaxis(state.amplitudes.reshape(dims), list(keep), list(range(len(keep))))
        psi = psi.reshape(dk, -1)
        return DensityMatrix(kdims, psi @ psi.conj().T)

    n = len(dims)
    rho = state.matrix.reshape(dims + dims)
    # row axes: 0..n-1, column axes: n..2n-1; bring kept rows then kept columns first
    order = list(keep) + traced + [n + i for i in keep] + [n + i for i in traced]
    rho = np.transpose(rho, order)
    dt = prod(dims[i] for i in traced) if traced else 1
    rho = rho.reshape(dk, dt, dk, dt)
    return DensityMatrix(kdims, np.einsum("ajbj->ab", rho))


def measure(state: StateVector, povm: Povm, rng: np.random.Generator,
            targets: Sequence[int] = None) -> MeasurementResult:
    """Sample a POVM outcome with Born probabilities; Lüders post-measurement state."""
    if targets is None:
        targets = tuple(range(len(state.dims)))
    targets = _check_targets(state.dims, targets)
    expected = prod(state.dims[t] for t in targets)
    if povm.dim != expected:
        raise DimensionMismatchError(
            f"{povm.name} acts on dimension {povm.dim}, targets {list(targets)} span {expected}")

    branches = [_apply_matrix(state.amplitudes, state.dims, k, targets) for k in povm._kraus]
    probs = np.array([float(np.vdot(v, v).real) for v in branches])
    probs[probs < TOLERANCE] = 0.0
    probs = probs / probs.sum()
    outcome = int(rng.choice(len(probs), p=probs))
    post = branches[outcome] / np.linalg.norm(branches[outcome])
    return MeasurementResult(outcome, StateVector(state.dims, post), tuple(float(p) for p in probs))


def outcome_probabilities(state: StateVector, povm: Povm, targets: Sequence[int] = None) -> Tuple[float, ...]:
    """Born probabilities of every POVM outcome, without sampling."""
    if targets is None:
        targets = tuple(range(len(state.dims)))
    targets = _check_targets(state.dims, targets)
    branches = [_apply_matrix(state.amplitudes, state.dims, k, targets) for k in povm._kraus]
    return tuple(float(np.vdot(v, v).real) for v in branches)
