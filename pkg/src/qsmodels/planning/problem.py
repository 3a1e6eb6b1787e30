"""Planning problem, plan, and pre-emption table types."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..arena import ItemKind, WaypointGraph
from ..perception import FluentSnapshot

# Detection may flag several at once; this is the fixed encoding order.
EMERGENCIES: tuple[str, ...] = ("under_attack", "facing_enemy", "behind_enemy")

# Dispatch precedence differs from the encoding order: damage first.
EMERGENCY_PRIORITY: tuple[str, ...] = ("under_attack", "behind_enemy", "facing_enemy")

ACTION_NAMES: tuple[str, ...] = (
    "attack",
    "elude",
    "move_towards",
    "pick_ammo",
    "pick_health",
)

DEFAULT_HORIZON_MAX = 8


@dataclass(frozen=True)
class PlannedAction:
    name: str
    args: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.name not in ACTION_NAMES:
            raise ValueError(f"unknown action {self.name!r}")
        wants = 0 if self.name == "attack" else 1
        if len(self.args) != wants:
            raise ValueError(f"{self.name} takes {wants} argument(s), got {self.args}")

    def render(self) -> str:
        if not self.args:
            return self.name
        return f"{self.name}({','.join(self.args)})"


ATTACK = PlannedAction("attack")


def move_towards(w: str) -> PlannedAction:
    return PlannedAction("move_towards", (w,))


def pick_health(item_id: str) -> PlannedAction:
    return PlannedAction("pick_health", (item_id,))


def pick_ammo(item_id: str) -> PlannedAction:
    return PlannedAction("pick_ammo", (item_id,))


def elude(w: str) -> PlannedAction:
    return PlannedAction("elude", (w,))


@dataclass(frozen=True)
class ItemFact:
    """Static item knowledge handed to the planner (id, place, kind)."""

    item_id: str
    waypoint: str
    kind: ItemKind


@dataclass(frozen=True)
class Plan:
    steps: tuple[PlannedAction, ...]

    def __len__(self) -> int:
        return len(self.steps)

    def validate(self) -> None:
        if not self.steps:
            raise ValueError("plan must have at least one step")
        if self.steps[-1] != ATTACK:
            raise ValueError(f"last action must be attack, got {self.steps[-1].render()}")


@dataclass(frozen=True)
class PreemptionTable:
    """Total map (timestep, emergency) -> reaction action."""

    entries: dict[tuple[int, str], PlannedAction]

    def action_for(self, step: int, emergency: str) -> PlannedAction | None:
        return self.entries.get((step, emergency))

    def validate(self, horizon: int, emergencies: tuple[str, ...] = EMERGENCIES) -> None:
        missing = [
            (t, e)
            for t in range(horizon)
            for e in emergencies
            if (t, e) not in self.entries
        ]
        if missing:
            raise ValueError(f"pre-emption table missing entries: {missing}")
        if len(self.entries) != horizon * len(emergencies):
            extra = set(self.entries) - {
                (t, e) for t in range(horizon) for e in emergencies
            }
            raise ValueError(f"pre-emption table has spurious entries: {sorted(extra)}")


@dataclass(frozen=True)
class PlanningProblem:
    snapshot: FluentSnapshot
    graph: WaypointGraph
    items: tuple[ItemFact, ...]
    horizon: int
    enemy_tier_estimate: int = 1
    emergencies: tuple[str, ...] = field(default=EMERGENCIES)

    def __post_init__(self) -> None:
        if self.horizon < 1:
            raise ValueError(f"horizon must be >= 1, got {self.horizon}")
        self.snapshot.validate()

    def with_horizon(self, horizon: int) -> PlanningProblem:
        return PlanningProblem(
            snapshot=self.snapshot,
            graph=self.graph,
            items=self.items,
            horizon=horizon,
            enemy_tier_estimate=self.enemy_tier_estimate,
            emergencies=self.emergencies,
        )
