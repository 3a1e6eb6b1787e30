from .decoder import MalformedAnswerSet, decode_plan, decode_preemption, decode_trajectory
from .encoder import encode
from .problem import (
    ACTION_NAMES,
    ATTACK,
    DEFAULT_HORIZON_MAX,
    EMERGENCIES,
    EMERGENCY_PRIORITY,
    ItemFact,
    Plan,
    PlannedAction,
    PlanningProblem,
    PreemptionTable,
    elude,
    move_towards,
    pick_ammo,
    pick_health,
)
from .semantics import (
    Context,
    EncodeError,
    PlanState,
    apply_action,
    best_flee,
    build_context,
    executable,
    initial_state,
    reaction_policy,
    replay_plan,
    state_fluents,
    validate_problem,
)

__all__ = [
    "ACTION_NAMES",
    "ATTACK",
    "Context",
    "DEFAULT_HORIZON_MAX",
    "EMERGENCIES",
    "EMERGENCY_PRIORITY",
    "EncodeError",
    "ItemFact",
    "MalformedAnswerSet",
    "Plan",
    "PlanState",
    "PlannedAction",
    "PlanningProblem",
    "PreemptionTable",
    "apply_action",
    "best_flee",
    "build_context",
    "decode_plan",
    "decode_preemption",
    "decode_trajectory",
    "elude",
    "encode",
    "executable",
    "initial_state",
    "move_towards",
    "pick_ammo",
    "pick_health",
    "reaction_policy",
    "replay_plan",
    "state_fluents",
    "validate_problem",
]
