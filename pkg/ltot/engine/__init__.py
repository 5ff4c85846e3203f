from .messages import (
    RECEIVE,
    ChannelConfig,
    ClassicalBits,
    Invoke,
    LossDeclaration,
    Party,
    PartyAbort,
    ProtocolOutcome,
    QuantumPayload,
    Receive,
    Restart,
    Send,
    bits,
)
from .runner import Execution, run_protocol
from .strategy import Functionality, PartyContext, ProtocolDescriptor, Strategy
from .transcript import Transcript, TranscriptEvent
from .trials import TrialCounts, run_trials, trial_seed

__all__ = [
    "RECEIVE",
    "ChannelConfig",
    "ClassicalBits",
    "Execution",
    "Functionality",
    "Invoke",
    "LossDeclaration",
    "Party",
    "PartyAbort",
    "PartyContext",
    "ProtocolDescriptor",
    "ProtocolOutcome",
    "QuantumPayload",
    "Receive",
    "Restart",
    "Send",
    "Strategy",
    "Transcript",
    "TranscriptEvent",
    "TrialCounts",
    "bits",
    "run_protocol",
    "run_trials",
    "trial_seed",
]
