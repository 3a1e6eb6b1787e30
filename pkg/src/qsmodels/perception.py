"""Sensing from the bot's viewpoint and translation into planner fluents."""

from __future__ import annotations

from dataclasses import dataclass, field

from .arena import (
    AgentState,
    Cell,
    GridMap,
    ItemKind,
    WaypointGraph,
    WorldState,
    line_of_sight,
    nearest_waypoint,
)
from .opponent import OpponentModel

HEALTH_LOW_MAX = 30
HEALTH_MEDIUM_MAX = 70

HEALTH_LEVELS = ("low", "medium", "high")


def health_level(health: int) -> str:
    """Total, monotone discretization: low <= 30 < medium <= 70 < high."""
    if health <= HEALTH_LOW_MAX:
        return "low"
    if health <= HEALTH_MEDIUM_MAX:
        return "medium"
    return "high"


def health_at_least(actual: str, wanted: str) -> bool:
    return HEALTH_LEVELS.index(actual) >= HEALTH_LEVELS.index(wanted)


@dataclass(frozen=True)
class ItemSighting:
    """Last known facts about one item; staleness 0 means seen this tick."""

    item_id: str
    kind: ItemKind
    waypoint: str
    available: bool
    staleness: int


@dataclass(frozen=True)
class Percept:
    tick: int
    me: AgentState
    enemy_visible: tuple[Cell, str] | None
    items_seen: tuple[ItemSighting, ...]
    damage_taken: int


def sense(world: WorldState, prior: Percept | None = None) -> Percept:
    """Read-only observation of the world from the bot's cell.

    The bot's own state is always exact. The enemy is reported only under
    line of sight. Items are seen fresh when their waypoint has LOS to the
    bot, otherwise remembered from the prior percept with staleness + 1.
    """
    bot = world.bot
    enemy_visible = None
    if line_of_sight(world.grid, bot.cell, world.enemy.cell):
        enemy_visible = (world.enemy.cell, world.enemy.facing)

    remembered = {s.item_id: s for s in prior.items_seen} if prior else {}
    sightings: list[ItemSighting] = []
    wp_cell = {wid: cell for wid, cell in world.graph.waypoints}
    for it in world.items:
        if line_of_sight(world.grid, bot.cell, wp_cell[it.waypoint]):
            sightings.append(
                ItemSighting(it.item_id, it.kind, it.waypoint, it.available, staleness=0)
            )
        elif it.item_id in remembered:
            old = remembered[it.item_id]
            sightings.append(
                ItemSighting(old.item_id, old.kind, old.waypoint, old.available, old.staleness + 1)
            )

    damage = max(0, prior.me.health - bot.health) if prior else 0
    return Percept(
        tick=world.tick,
        me=bot,
        enemy_visible=enemy_visible,
        items_seen=tuple(sightings),
        damage_taken=damage,
    )


@dataclass(frozen=True)
class Fluent:
    """Ground fluent as a functor plus rendered argument strings."""

    name: str
    args: tuple[str, ...] = ()

    def render(self) -> str:
        if not self.args:
            return self.name
        return f"{self.name}({','.join(self.args)})"


def at(w: str) -> Fluent:
    return Fluent("at", (w,))


def health_fluent(level: str) -> Fluent:
    return Fluent("health_level", (level,))


def armed(tier: int) -> Fluent:
    return Fluent("armed", (str(tier),))


AMMO_OK = Fluent("ammo_ok")


def item_available(item_id: str, wp: str, kind: ItemKind) -> Fluent:
    return Fluent("item_available", (item_id, wp, kind.render()))


def enemy_last_seen(w: str) -> Fluent:
    return Fluent("enemy_last_seen", (w,))


def enemy_expected(w: str) -> Fluent:
    return Fluent("enemy_expected", (w,))


@dataclass(frozen=True)
class FluentSnapshot:
    tick: int
    fluents: frozenset[Fluent] = field(default_factory=frozenset)

    def single(self, name: str) -> Fluent | None:
        found = [f for f in self.fluents if f.name == name]
        return found[0] if found else None

    def validate(self) -> None:
        for name in ("at", "health_level", "armed"):
            n = sum(1 for f in self.fluents if f.name == name)
            if n != 1:
                raise ValueError(f"snapshot must contain exactly one {name}(...), got {n}")
        for name in ("enemy_last_seen", "enemy_expected"):
            n = sum(1 for f in self.fluents if f.name == name)
            if n > 1:
                raise ValueError(f"snapshot must contain at most one {name}(...), got {n}")


def to_fluents(
    percept: Percept,
    opponent: OpponentModel,
    grid: GridMap,
    graph: WaypointGraph,
) -> FluentSnapshot:
    """Symbolic world view handed to the planner."""
    me = percept.me
    fluents: set[Fluent] = {
        at(nearest_waypoint(grid, graph, me.cell)),
        health_fluent(health_level(me.health)),
        armed(me.armed_tier),
    }
    if me.ammo_ok:
        fluents.add(AMMO_OK)
    for s in percept.items_seen:
        if s.available:
            fluents.add(item_available(s.item_id, s.waypoint, s.kind))
    if opponent.last_seen is not None:
        last_wp = opponent.last_seen[0]
        fluents.add(enemy_last_seen(last_wp))
        fluents.add(enemy_expected(opponent.predict_next(last_wp)))
    snapshot = FluentSnapshot(tick=percept.tick, fluents=frozenset(fluents))
    snapshot.validate()
    return snapshot
