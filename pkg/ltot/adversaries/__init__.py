from .attacks import (
    AttackOutput,
    alice_helstrom_attack,
    alice_lost_message_attack,
    alice_protocol6_attack,
    bob_epr_attack,
    bob_parity_attack,
    combined_protocol_attack,
    curious_prototype,
    ideal_rot_attack,
    lost_message_prediction,
    optimal_attack,
    role_switched_attack,
    wcf_cheater,
)
from .registry import StrategyOptions, build_strategy, strategy_names
from .report import attack_succeeded, build_attack_report, scored_strategy, success_classifier

__all__ = [
    "AttackOutput",
    "StrategyOptions",
    "alice_helstrom_attack",
    "alice_lost_message_attack",
    "alice_protocol6_attack",
    "attack_succeeded",
    "bob_epr_attack",
    "bob_parity_attack",
    "build_attack_report",
    "build_strategy",
    "combined_protocol_attack",
    "curious_prototype",
    "ideal_rot_attack",
    "lost_message_prediction",
    "optimal_attack",
    "role_switched_attack",
    "scored_strategy",
    "strategy_names",
    "success_classifier",
    "wcf_cheater",
]
