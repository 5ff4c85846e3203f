"""
The engine's global quantum state.

The joint state is kept as independent blocks (one StateVector each); a
block is merged with another only when an operation spans both. Every
factor has an owner; parties may only touch factors they hold.
Discarded or lost factors are measured in the computational basis by
nature and dropped, so the remaining factors keep exactly the statistics of
the partial trace while the state stays small across restarts.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ProtocolViolation
from ..quantum import DensityMatrix, MeasurementResult, Povm, StateVector, UnitaryOp
from ..quantum import apply_unitary, measure, partial_trace, tensor
from .messages import Party


@dataclass
class _Block:
    state: StateVector
    factors: List[int]


class QuantumRegister:
    def __init__(self, rng: np.random.Generator):
        self._rng = rng
        self._blocks: Dict[int, _Block] = {}
        self._block_of: Dict[int, int] = {}
        self._owner: Dict[int, Optional[Party]] = {}
        self._next_factor = 0
        self._next_block = 0

    # ownership

    def holds(self, party: Party, handle: Sequence[int]) -> bool:
        return bool(handle) and all(self._owner.get(f) is party for f in handle)

    def require(self, party: Party, handle: Sequence[int]):
        if not self.holds(party, handle):
            raise ProtocolViolation(f"{party.value} addressed factors {list(handle)} it does not hold")

    def transfer(self, handle: Sequence[int], party: Party):
        for f in handle:
            self._owner[f] = party

    def owned_by(self, party: Party) -> List[int]:
        return sorted(f for f, p in self._owner.items() if p is party)

    # state manipulation

    def prepare(self, party: Party, state: StateVector) -> Tuple[int, ...]:
        factors = list(range(self._next_factor, self._next_factor + len(state.dims)))
        self._next_factor += len(factors)
        block_id = self._next_block
        self._next_block += 1
        self._blocks[block_id] = _Block(state, factors)
        for f in factors:
            self._block_of[f] = block_id
            self._owner[f] = party
        return tuple(factors)

    def _gather(self, handle: Sequence[int]) -> Tuple[_Block, List[int]]:
        """Merge the blocks touched by ``handle``; return the block and target positions."""
        block_ids = sorted({self._block_of[f] for f in handle})
        head = self._blocks[block_ids[0]]
        for other_id in block_ids[1:]:
            other = self._blocks.pop(other_id)
            head.state = tensor(head.state, other.state)
            head.factors.extend(other.factors)
            for f in other.factors:
                self._block_of[f] = block_ids[0]
        return head, [head.factors.index(f) for f in handle]

    def apply(self, party: Party, u: UnitaryOp, handle: Sequence[int]):
        self.require(party, handle)
        block, targets = self._gather(handle)
        block.state = apply_unitary(block.state, u, targets)

    def measure(self, party: Party, povm: Povm, handle: Sequence[int]) -> MeasurementResult:
        self.require(party, handle)
        block, targets = self._gather(handle)
        result = measure(block.state, povm, self._rng, targets)
        block.state = result.state
        return result

    def reduced(self, handle: Sequence[int]) -> DensityMatrix:
        """Reduced state of ``handle``; simulator-side inspection only."""
        block, targets = self._gather(handle)
        return partial_trace(block.state, targets)

    def discard(self, handle: Sequence[int]):
        for f in handle:
            self._drop(f)

    def discard_owned(self, party: Party):
        self.discard(self.owned_by(party))

    def _drop(self, factor: int):
        if factor not in self._owner:
            return
        block_id = self._block_of.pop(factor)
        del self._owner[factor]
        block = self._blocks[block_id]
        pos = block.factors.index(factor)
        block.factors.pop(pos)
        if not block.factors:
            del self._blocks[block_id]
            return
        dims = block.state.dims
        psi = block.state.amplitudes.reshape(dims)
        weights = np.abs(np.moveaxis(psi, pos, 0).reshape(dims[pos], -1)) ** 2
        probs = weights.sum(axis=1)
        probs = probs / probs.sum()
        k = int(self._rng.choice(dims[pos], p=probs))
        rest = np.take(psi, k, axis=pos).reshape(-1)
        rest = rest / np.linalg.norm(rest)
        block.state = StateVector(dims[:pos] + dims[pos + 1:], rest)

    def summary(self) -> List[dict]:
        out = []
        for block_id in sorted(self._blocks):
            block = self._blocks[block_id]
            out.append({
                "factors": list(block.factors),
                "dims": list(block.state.dims),
                "owners": [getattr(self._owner[f], "value", None) for f in block.factors],
            })
        return out
