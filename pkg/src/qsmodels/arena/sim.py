"""One-tick world transition.

Phase order within a tick (fixed; determinism depends on it):
  1. moves/turns for both agents, simultaneously from pre-move cells
  2. fire resolution on post-move cells, simultaneous
  3. respawn countdown (an item flips back to available when it hits 0)
  4. pickups for agents standing on an item's waypoint cell, bot first
  5. tick increment
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .geometry import euclidean_within, line_of_sight
from .mapfile import MapBundle
from .model import DELTA, AgentState, Command, Item, WorldState


@dataclass(frozen=True)
class CombatConfig:
    """Invented stand-in combat arithmetic; every value is overridable."""

    damage_per_tier: int = 10
    r_combat: int = 6
    respawn_ticks: int = 300
    # +40 raises the 30/70-discretized health level by exactly one step
    # from any starting health, matching the planner's pick_health effect.
    health_pickup: int = 40


DEFAULT_COMBAT = CombatConfig()


def initial_world(
    bundle: MapBundle,
    seed: int = 0,
    enemy_armed_tier: int = 1,
    bot_facing: str = "E",
    enemy_facing: str = "W",
) -> WorldState:
    return WorldState(
        tick=0,
        grid=bundle.grid,
        graph=bundle.graph,
        items=bundle.items,
        bot=AgentState(role="bot", cell=bundle.bot_spawn, facing=bot_facing),
        enemy=AgentState(
            role="enemy",
            cell=bundle.enemy_spawn,
            facing=enemy_facing,
            armed_tier=enemy_armed_tier,
        ),
        rng_state=seed,
    )


def _apply_motion(world: WorldState, agent: AgentState, cmd: Command) -> AgentState:
    if cmd.kind == "turn":
        return replace(agent, facing=cmd.direction)
    if cmd.kind == "move":
        dx, dy = DELTA[cmd.direction]
        target = (agent.cell[0] + dx, agent.cell[1] + dy)
        if world.grid.is_floor(target):
            return replace(agent, cell=target, facing=cmd.direction)
        return agent  # blocked moves degrade to idle
    return agent


def _fire_damage(world: WorldState, shooter: AgentState, target: AgentState, combat: CombatConfig) -> int:
    if not shooter.ammo_ok:
        return 0
    if not euclidean_within(shooter.cell, target.cell, combat.r_combat):
        return 0
    if not line_of_sight(world.grid, shooter.cell, target.cell):
        return 0
    return combat.damage_per_tier * shooter.armed_tier


def _pick_up(agent: AgentState, item: Item, combat: CombatConfig) -> AgentState:
    kind = item.kind
    if kind.name == "health":
        return replace(agent, health=min(100, agent.health + combat.health_pickup))
    if kind.name == "ammo":
        return replace(agent, ammo_ok=True)
    return replace(agent, ammo_ok=True, armed_tier=max(agent.armed_tier, kind.tier))


def step(
    world: WorldState,
    bot_cmd: Command,
    enemy_cmd: Command,
    combat: CombatConfig = DEFAULT_COMBAT,
) -> WorldState:
    """Advance one tick. Deterministic in (world, commands); never raises."""
    bot = _apply_motion(world, world.bot, bot_cmd)
    enemy = _apply_motion(world, world.enemy, enemy_cmd)

    moved = replace(world, bot=bot, enemy=enemy)
    dmg_to_enemy = _fire_damage(moved, bot, enemy, combat) if bot_cmd.kind == "fire" else 0
    dmg_to_bot = _fire_damage(moved, enemy, bot, combat) if enemy_cmd.kind == "fire" else 0
    bot = replace(bot, health=max(0, min(100, bot.health - dmg_to_bot)))
    enemy = replace(enemy, health=max(0, min(100, enemy.health - dmg_to_enemy)))

    items = []
    for it in world.items:
        if not it.available:
            remaining = it.respawn_remaining - 1
            if remaining <= 0:
                it = replace(it, available=True, respawn_remaining=0)
            else:
                it = replace(it, respawn_remaining=remaining)
        items.append(it)

    wp_cell = {wid: cell for wid, cell in world.graph.waypoints}
    for idx, it in enumerate(items):
        if not it.available:
            continue
        cell = wp_cell[it.waypoint]
        if bot.cell == cell:  # bot wins contested pickups
            bot = _pick_up(bot, it, combat)
        elif enemy.cell == cell:
            enemy = _pick_up(enemy, it, combat)
        else:
            continue
        items[idx] = replace(it, available=False, respawn_remaining=combat.respawn_ticks)

    return replace(
        world,
        tick=world.tick + 1,
        bot=bot,
        enemy=enemy,
        items=tuple(items),
    )
