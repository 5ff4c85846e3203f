"""
Exception types shared by the simulator.

Every error carries a short machine-readable ``code`` and a human ``detail``;
the CLI turns them into ``{"error": code, "detail": ...}`` bodies.
"""

from typing import Any, Dict


class LtotError(Exception):
    code = "ltot_error"
    exit_code = 1

    def __init__(self, detail: str, code: str = None):
        super().__init__(detail)
        self.detail = detail
        if code is not None:
            self.code = code

    def to_dict(self) -> Dict[str, Any]:
        return {"error": self.code, "detail": self.detail}


class StateError(LtotError, ValueError):
    """Invalid quantum object (norm, hermiticity, PSD, completeness)"""
    code = "invalid_state"


class DimensionMismatchError(LtotError, ValueError):
    code = "dimension_mismatch"


class ProtocolViolation(LtotError):
    """A strategy broke the execution rules (turn order, ownership, declarations)"""
    code = "protocol_violation"


class PreconditionError(LtotError, ValueError):
    code = "precondition_failed"


class UnknownProtocolError(LtotError, KeyError):
    code = "unknown_protocol"

    def __str__(self) -> str:
        return self.detail


class UnknownStrategyError(LtotError, KeyError):
    code = "unknown_strategy"

    def __str__(self) -> str:
        return self.detail


class ConfigError(LtotError, ValueError):
    code = "config_error"
