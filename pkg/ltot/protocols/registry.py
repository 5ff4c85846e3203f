"""
Protocol registry keyed by canonical names.
"""

from typing import Callable, Dict, List, Optional

from ..engine.strategy import ProtocolDescriptor
from ..errors import PreconditionError, UnknownProtocolError
from ..quantum.gates import SQRT_HALF
from ..schemas.domain import CheatProfile, WcfSpec
from .cks10 import cks10_rot
from .ideal import ideal_ot, ideal_rot, wcf_black_box
from .reductions import ot_from_rot, role_switch, rot_from_ot
from .unfair import unfair_lt_rot
from .wcf_based import combined_from_base, prototype_rot

DEFAULT_INNER = "unfair-lt-rot"


def _inner(options: dict, kind: str = "rot") -> ProtocolDescriptor:
    name = options.get("inner") or (DEFAULT_INNER if kind == "rot" else "ideal-ot")
    descriptor = build_protocol(name, **{k: v for k, v in options.items() if k != "inner"})
    if descriptor.kind != kind:
        raise PreconditionError(f"inner protocol {name} is a {descriptor.kind} protocol, expected {kind}")
    return descriptor


_BUILDERS: Dict[str, Callable[[dict], ProtocolDescriptor]] = {
    "cks10-rot": lambda o: cks10_rot(o.get("amplitude") or SQRT_HALF),
    "unfair-lt-rot": lambda o: unfair_lt_rot(),
    "wcf-black-box": lambda o: wcf_black_box(o.get("wcf")),
    "ideal-ot": lambda o: ideal_ot(),
    "ideal-rot": lambda o: ideal_rot(o.get("profile")),
    "rot-from-ot": lambda o: rot_from_ot(_inner(o, "ot")),
    "ot-from-rot": lambda o: ot_from_rot(_inner(o)),
    "prototype-rot": lambda o: prototype_rot(o.get("wcf")),
    "combined-rot": lambda o: combined_from_base(o.get("wcf") or WcfSpec(), _inner(o)),
    "role-switch": lambda o: role_switch(_inner(o)),
}


def protocol_names() -> List[str]:
    return sorted(_BUILDERS)


def build_protocol(name: str, wcf: Optional[WcfSpec] = None, inner: Optional[str] = None,
                   amplitude: Optional[float] = None, profile: Optional[CheatProfile] = None) -> ProtocolDescriptor:
    """Build a registered protocol; composites take their inner protocol by name."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownProtocolError(f"unknown protocol '{name}'; known: {', '.join(protocol_names())}")
    if inner == name:
        raise PreconditionError(f"{name} cannot wrap itself")
    return builder({"wcf": wcf, "inner": inner, "amplitude": amplitude, "profile": profile})


def get_protocol(name: str) -> ProtocolDescriptor:
    return build_protocol(name)
