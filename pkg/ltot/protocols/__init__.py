from .base import CoinOutput, OtInputs, ReceiverOutput, RotOutput, SenderOutput, restartable
from .cks10 import cks10_rot
from .functionalities import CHEAT, IdealOt, IdealRot, WcfBlackBox
from .ideal import ideal_ot, ideal_rot, wcf_black_box
from .reductions import ot_from_rot, role_switch, rot_from_ot
from .registry import build_protocol, get_protocol, protocol_names
from .unfair import unfair_lt_rot
from .wcf_based import combined_from_base, combined_rot, prototype_rot

__all__ = [
    "CHEAT",
    "CoinOutput",
    "IdealOt",
    "IdealRot",
    "OtInputs",
    "ReceiverOutput",
    "RotOutput",
    "SenderOutput",
    "WcfBlackBox",
    "build_protocol",
    "cks10_rot",
    "combined_from_base",
    "combined_rot",
    "get_protocol",
    "ideal_ot",
    "ideal_rot",
    "ot_from_rot",
    "prototype_rot",
    "protocol_names",
    "restartable",
    "role_switch",
    "rot_from_ot",
    "unfair_lt_rot",
    "wcf_black_box",
]
