from .states import (
    DensityMatrix,
    MeasurementResult,
    Povm,
    StateVector,
    UnitaryOp,
    apply_unitary,
    measure,
    outcome_probabilities,
    partial_trace,
    tensor,
)
from .distance import gram_deviation, helstrom, tensor_power, trace_distance

__all__ = [
    "DensityMatrix",
    "MeasurementResult",
    "Povm",
    "StateVector",
    "UnitaryOp",
    "apply_unitary",
    "gram_deviation",
    "helstrom",
    "measure",
    "outcome_probabilities",
    "partial_trace",
    "tensor",
    "tensor_power",
    "trace_distance",
]
