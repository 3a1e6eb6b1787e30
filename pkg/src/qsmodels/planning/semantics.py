"""Action semantics shared by the forward-search oracle, the plan replay
checker, and the reaction policy.

One planner step per action; the executive expands each into per-tick
commands. The declarative encoding in encoder.py states the same semantics
as logic rules and is deliberately a separate implementation.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property

from ..perception import (
    AMMO_OK,
    Fluent,
    armed,
    at,
    enemy_expected,
    enemy_last_seen,
    health_fluent,
    item_available,
)
from .problem import ItemFact, PlannedAction, PlanningProblem


class EncodeError(Exception):
    """The snapshot references waypoints or items the problem doesn't know."""


_NEXT_LEVEL = {"low": "medium", "medium": "high", "high": "high"}
_LEVEL_RANK = {"low": 0, "medium": 1, "high": 2}


@dataclass(frozen=True)
class PlanState:
    """Symbolic state the planner reasons over."""

    at: str
    health: str
    armed: int
    ammo_ok: bool
    available: frozenset[str]  # item ids still on the field


@dataclass(frozen=True)
class Context:
    """Static facts shared across all steps of one problem."""

    problem: PlanningProblem
    enemy_wp: str | None  # enemy modeled static at enemy_expected
    last_seen_wp: str | None

    @cached_property
    def items(self) -> dict[str, ItemFact]:
        return {f.item_id: f for f in self.problem.items}

    @cached_property
    def dist_from_enemy(self) -> dict[str, int]:
        if self.enemy_wp is None:
            return {}
        return self.problem.graph.distances_from(self.enemy_wp)

    @cached_property
    def actions(self) -> tuple[PlannedAction, ...]:
        """All candidate actions in the fixed expansion order:
        attack < elude < move_towards < pick_ammo < pick_health, then by
        argument id."""
        graph = self.problem.graph
        out: list[PlannedAction] = [PlannedAction("attack")]
        out += [PlannedAction("elude", (w,)) for w in graph.ids()]
        out += [PlannedAction("move_towards", (w,)) for w in graph.ids()]
        out += [
            PlannedAction("pick_ammo", (f.item_id,))
            for f in self.problem.items
            if f.kind.name in ("ammo", "weapon")
        ]
        out += [
            PlannedAction("pick_health", (f.item_id,))
            for f in self.problem.items
            if f.kind.name == "health"
        ]
        return tuple(sorted(out, key=lambda a: (a.name, a.args)))

    def required_tier(self) -> int:
        return max(1, self.problem.enemy_tier_estimate)


def build_context(problem: PlanningProblem) -> Context:
    exp = problem.snapshot.single("enemy_expected")
    seen = problem.snapshot.single("enemy_last_seen")
    return Context(
        problem=problem,
        enemy_wp=exp.args[0] if exp else None,
        last_seen_wp=seen.args[0] if seen else None,
    )


def validate_problem(problem: PlanningProblem) -> None:
    graph = problem.graph
    known_items = {f.item_id for f in problem.items}
    for fact in problem.items:
        if not graph.has(fact.waypoint):
            raise EncodeError(f"item {fact.item_id!r} at unknown waypoint {fact.waypoint!r}")
    for f in problem.snapshot.fluents:
        if f.name in ("at", "enemy_last_seen", "enemy_expected") and not graph.has(f.args[0]):
            raise EncodeError(f"fluent {f.render()} references unknown waypoint")
        if f.name == "item_available":
            if f.args[0] not in known_items:
                raise EncodeError(f"fluent {f.render()} references unknown item")
            if not graph.has(f.args[1]):
                raise EncodeError(f"fluent {f.render()} references unknown waypoint")


def initial_state(problem: PlanningProblem) -> PlanState:
    snap = problem.snapshot
    return PlanState(
        at=snap.single("at").args[0],
        health=snap.single("health_level").args[0],
        armed=int(snap.single("armed").args[0]),
        ammo_ok=AMMO_OK in snap.fluents,
        available=frozenset(
            f.args[0] for f in snap.fluents if f.name == "item_available"
        ),
    )


def executable(action: PlannedAction, state: PlanState, ctx: Context) -> bool:
    graph = ctx.problem.graph
    if action.name == "move_towards":
        return action.args[0] in graph.neighbors(state.at)
    if action.name == "elude":
        w = action.args[0]
        if ctx.enemy_wp is None or w not in graph.neighbors(state.at):
            return False
        dist = ctx.dist_from_enemy
        return dist.get(w, -1) > dist.get(state.at, -1)
    if action.name == "pick_health":
        fact = ctx.items.get(action.args[0])
        return (
            fact is not None
            and fact.kind.name == "health"
            and action.args[0] in state.available
            and fact.waypoint == state.at
        )
    if action.name == "pick_ammo":
        fact = ctx.items.get(action.args[0])
        return (
            fact is not None
            and fact.kind.name in ("ammo", "weapon")
            and action.args[0] in state.available
            and fact.waypoint == state.at
        )
    # attack: adjacent or co-located with the expected enemy, in fighting shape
    if ctx.enemy_wp is None:
        return False
    near = state.at == ctx.enemy_wp or ctx.enemy_wp in graph.neighbors(state.at)
    return (
        near
        and _LEVEL_RANK[state.health] >= _LEVEL_RANK["medium"]
        and state.armed >= ctx.required_tier()
        and state.ammo_ok
    )


def apply_action(action: PlannedAction, state: PlanState, ctx: Context) -> PlanState:
    if action.name in ("move_towards", "elude"):
        return replace(state, at=action.args[0])
    if action.name == "pick_health":
        return replace(
            state,
            health=_NEXT_LEVEL[state.health],
            available=state.available - {action.args[0]},
        )
    if action.name == "pick_ammo":
        fact = ctx.items[action.args[0]]
        tier = state.armed if fact.kind.name != "weapon" else max(state.armed, fact.kind.tier)
        return replace(
            state,
            ammo_ok=True,
            armed=tier,
            available=state.available - {action.args[0]},
        )
    return state  # attack hands off to the low-level combat behavior


def best_flee(at_wp: str, ctx: Context) -> str:
    """Edge-neighbor maximizing graph distance from the expected enemy
    position; ties to the smallest id; a neighborless waypoint flees to
    itself."""
    neighbors = ctx.problem.graph.neighbors(at_wp)
    if not neighbors:
        return at_wp
    dist = ctx.dist_from_enemy
    return min(neighbors, key=lambda w: (-dist.get(w, 0), w))


def reaction_policy(state: PlanState, ctx: Context) -> dict[str, PlannedAction]:
    """Reaction action per emergency, given the trajectory state at one step."""
    flee = PlannedAction("elude", (best_flee(state.at, ctx),))
    attack = PlannedAction("attack")
    fight_fit = (
        _LEVEL_RANK[state.health] >= _LEVEL_RANK["medium"]
        and state.armed >= ctx.problem.enemy_tier_estimate
    )
    return {
        "under_attack": flee if state.health == "low" else attack,
        "facing_enemy": attack if fight_fit else flee,
        "behind_enemy": attack,
    }


def state_fluents(state: PlanState, ctx: Context) -> frozenset[Fluent]:
    """Full fluent rendering of a trajectory state (statics included)."""
    out = {
        at(state.at),
        health_fluent(state.health),
        armed(state.armed),
    }
    if state.ammo_ok:
        out.add(AMMO_OK)
    for iid in state.available:
        fact = ctx.items[iid]
        out.add(item_available(iid, fact.waypoint, fact.kind))
    if ctx.last_seen_wp is not None:
        out.add(enemy_last_seen(ctx.last_seen_wp))
    if ctx.enemy_wp is not None:
        out.add(enemy_expected(ctx.enemy_wp))
    return frozenset(out)


def replay_plan(problem: PlanningProblem, steps: tuple[PlannedAction, ...]) -> bool:
    """Soundness check: every action executable in sequence from the
    snapshot, with attack as the final step."""
    if not steps or steps[-1].name != "attack":
        return False
    ctx = build_context(problem)
    state = initial_state(problem)
    for action in steps:
        if not executable(action, state, ctx):
            return False
        state = apply_action(action, state, ctx)
    return True
