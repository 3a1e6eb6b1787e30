"""Reactive low-level layer: sense, pre-empt, validate, execute.

The tick loop owns all mutable state here and never waits on the planner;
plan requests and results cross to the solver worker as immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Protocol

from .arena import (
    DELTA,
    FIRE,
    IDLE,
    OPPOSITE,
    Cell,
    Command,
    MapBundle,
    WorldState,
    line_of_sight,
    move_step,
    nearest_waypoint,
    shortest_path,
    turn,
)
from .opponent import OpponentModel
from .perception import (
    Fluent,
    FluentSnapshot,
    Percept,
    health_at_least,
    health_level,
    sense,
    to_fluents,
)
from .planning import (
    DEFAULT_HORIZON_MAX,
    EMERGENCY_PRIORITY,
    ItemFact,
    Plan,
    PlannedAction,
    PlanningProblem,
    PreemptionTable,
)
from .solvers import DeepeningResult, NoPlan


class ActionStuck(Exception):
    """An action ran 3x its expected ticks without completing."""


@dataclass(frozen=True)
class Assumption:
    """A fluent the plan relies on at a given step."""

    fluent: Fluent
    step: int

    def render(self) -> str:
        return f"{self.fluent.render()}@{self.step}"


@dataclass(frozen=True)
class PlanRequest:
    request_id: int
    problem: PlanningProblem
    horizon_max: int


@dataclass(frozen=True)
class PlanDelivery:
    request_id: int
    outcome: DeepeningResult | NoPlan


class PlanService(Protocol):
    """Asynchronous planning boundary; poll() must never block."""

    def submit(self, request: PlanRequest) -> None: ...

    def poll(self) -> PlanDelivery | None: ...


@dataclass
class ActionProgress:
    action: PlannedAction
    ticks_in_action: int = 0
    expected_ticks: int = 1
    enemy_unseen_ticks: int = 0


@dataclass
class ExecutiveState:
    mode: str = "planning_hiding"  # "planning_hiding" | "executing" | "reacting"
    plan: Plan | None = None
    preemption: PreemptionTable | None = None
    trajectory: tuple[frozenset[Fluent], ...] = ()
    current_step: int = 0
    progress: ActionProgress | None = None
    assumptions: tuple[Assumption, ...] = ()
    outstanding_request: bool = False
    request_id: int = 0
    last_preemption: dict | None = None


@dataclass(frozen=True)
class ExecutiveConfig:
    horizon_max: int = DEFAULT_HORIZON_MAX
    r_combat: int = 6
    enemy_tier_estimate: int = 1
    stuck_factor: int = 3
    attack_patience_ticks: int = 50


def _quadrant_contains(facing: str, origin: Cell, target: Cell) -> bool:
    """Target lies in the 90-degree quadrant of `facing` seen from origin
    (diagonals inclusive, same cell excluded)."""
    dx, dy = target[0] - origin[0], target[1] - origin[1]
    if dx == 0 and dy == 0:
        return False
    if facing == "N":
        return dy < 0 and abs(dx) <= -dy
    if facing == "S":
        return dy > 0 and abs(dx) <= dy
    if facing == "E":
        return dx > 0 and abs(dy) <= dx
    return dx < 0 and abs(dy) <= -dx


def detect_emergencies(percept: Percept, r_combat: int = 6) -> set[str]:
    """under_attack on fresh damage; facing/behind for a visible enemy in
    combat range whose facing quadrant contains / opposes the bot."""
    out: set[str] = set()
    if percept.damage_taken > 0:
        out.add("under_attack")
    if percept.enemy_visible is not None:
        enemy_cell, enemy_facing = percept.enemy_visible
        me = percept.me.cell
        dx, dy = me[0] - enemy_cell[0], me[1] - enemy_cell[1]
        if dx * dx + dy * dy <= r_combat * r_combat:
            if _quadrant_contains(enemy_facing, enemy_cell, me):
                out.add("facing_enemy")
            elif _quadrant_contains(OPPOSITE[enemy_facing], enemy_cell, me):
                out.add("behind_enemy")
    return out


def principal_direction(src: Cell, dst: Cell) -> str:
    """Facing that best points from src to dst; horizontal wins ties."""
    dx, dy = dst[0] - src[0], dst[1] - src[1]
    if abs(dx) >= abs(dy) and dx != 0:
        return "E" if dx > 0 else "W"
    if dy != 0:
        return "S" if dy > 0 else "N"
    return "E"


class Executive:
    """Owner of the execution cycle for the bot side of the duel."""

    def __init__(
        self,
        bundle: MapBundle,
        plan_service: PlanService,
        config: ExecutiveConfig = ExecutiveConfig(),
        event_sink: Callable[[dict], None] | None = None,
        now_ms: Callable[[], float] = lambda: 0.0,
    ) -> None:
        self.bundle = bundle
        self.config = config
        self.plan_service = plan_service
        self.state = ExecutiveState()
        self.opponent = OpponentModel()
        self._event_sink = event_sink or (lambda record: None)
        self._now_ms = now_ms
        self._percept: Percept | None = None
        self._tier_estimate = config.enemy_tier_estimate
        self._believed_available: dict[str, bool] = {}
        self._request_sent_ms = 0.0

    # -- observation bookkeeping ---------------------------------------------

    def _emit(self, event: str, tick: int, **fields) -> None:
        self._event_sink({"event": event, "tick": tick, **fields})

    def _observe(self, world: WorldState) -> Percept:
        percept = sense(world, self._percept)
        self._percept = percept
        if percept.enemy_visible is not None:
            wp = nearest_waypoint(self.bundle.grid, self.bundle.graph, percept.enemy_visible[0])
            self.opponent.observe(wp, percept.tick)
        self._update_tier_estimate(percept)
        return percept

    def _update_tier_estimate(self, percept: Percept) -> None:
        # A weapon that vanishes while we are not standing on its waypoint
        # was taken by the enemy; raise the tier estimate accordingly.
        wp_cell = dict(self.bundle.graph.waypoints)
        for s in percept.items_seen:
            if s.kind.name != "weapon" or s.staleness != 0:
                continue
            was_available = self._believed_available.get(s.item_id)
            if was_available and not s.available and percept.me.cell != wp_cell[s.waypoint]:
                self._tier_estimate = max(self._tier_estimate, s.kind.tier)
            self._believed_available[s.item_id] = s.available

    # -- planning boundary -----------------------------------------------------

    def _snapshot(self, percept: Percept) -> FluentSnapshot:
        return to_fluents(percept, self.opponent.copy(), self.bundle.grid, self.bundle.graph)

    def _known_items(self, percept: Percept) -> tuple[ItemFact, ...]:
        return tuple(
            ItemFact(s.item_id, s.waypoint, s.kind)
            for s in sorted(percept.items_seen, key=lambda s: s.item_id)
        )

    def _request_plan(self, percept: Percept) -> None:
        self.state.request_id += 1
        self.state.outstanding_request = True
        self._request_sent_ms = self._now_ms()
        problem = PlanningProblem(
            snapshot=self._snapshot(percept),
            graph=self.bundle.graph,
            items=self._known_items(percept),
            horizon=1,
            enemy_tier_estimate=self._tier_estimate,
        )
        self.plan_service.submit(
            PlanRequest(self.state.request_id, problem, self.config.horizon_max)
        )
        self.state.mode = "planning_hiding"
        self._emit("plan_requested", percept.tick, horizon=self.config.horizon_max)

    def _accept_deliveries(self, tick: int) -> None:
        while True:
            delivery = self.plan_service.poll()
            if delivery is None:
                return
            if delivery.request_id != self.state.request_id or not self.state.outstanding_request:
                continue  # superseded request: result discarded, never executed
            self.state.outstanding_request = False
            outcome = delivery.outcome
            if isinstance(outcome, NoPlan):
                self._emit("plan_failed", tick, reason=outcome.diagnostic)
                continue
            self.state.plan = outcome.plan
            self.state.preemption = outcome.preemption
            self.state.trajectory = outcome.trajectory
            self.state.current_step = 0
            self.state.progress = None
            self.state.assumptions = self._assumptions_of(outcome)
            self.state.mode = "executing"
            self._emit(
                "plan_ready",
                tick,
                latency_ms=round(self._now_ms() - self._request_sent_ms, 3),
                horizon=outcome.horizon,
            )

    def _assumptions_of(self, outcome: DeepeningResult) -> tuple[Assumption, ...]:
        out: list[Assumption] = []
        for t, fluents in enumerate(outcome.trajectory):
            for f in fluents:
                if f.name in ("at", "health_level"):
                    out.append(Assumption(f, t))
        for t, action in enumerate(outcome.plan.steps):
            if action.name in ("pick_health", "pick_ammo"):
                item_id = action.args[0]
                for f in outcome.trajectory[t]:
                    if f.name == "item_available" and f.args[0] == item_id:
                        out.append(Assumption(f, t))
        return tuple(out)

    # -- plan validity -----------------------------------------------------------

    def check_plan_valid(self, percept: Percept) -> Assumption | None:
        """None when every live assumption holds; else the violated one."""
        state = self.state
        assert state.plan is not None
        step = state.current_step
        known_unavailable = {s.item_id for s in percept.items_seen if not s.available}
        wp_cell = dict(self.bundle.graph.waypoints)
        for assumption in state.assumptions:
            if assumption.step < step:
                continue
            f = assumption.fluent
            if f.name == "item_available" and f.args[0] in known_unavailable:
                if wp_cell.get(f.args[1]) == percept.me.cell:
                    # Standing on the item's cell: the pickup raced in our
                    # favor (bot picks first), so the assumption is spent.
                    continue
                return assumption
        expected_health = next(
            (a for a in state.assumptions if a.step == step and a.fluent.name == "health_level"),
            None,
        )
        if expected_health is not None:
            actual = health_level(percept.me.health)
            if not health_at_least(actual, expected_health.fluent.args[0]):
                return expected_health
        here = nearest_waypoint(self.bundle.grid, self.bundle.graph, percept.me.cell)
        allowed = {
            a.fluent.args[0]
            for a in state.assumptions
            if a.fluent.name == "at" and a.step in (step, step + 1)
        }
        if allowed and here not in allowed:
            return next(
                a for a in state.assumptions if a.fluent.name == "at" and a.step == step
            )
        return None

    # -- durative action execution -------------------------------------------------

    def _step_towards(self, src: Cell, dst: Cell) -> Command:
        path = shortest_path(self.bundle.grid, src, dst)
        nxt = path[1]
        direction = next(
            d for d, (dx, dy) in DELTA.items() if (src[0] + dx, src[1] + dy) == nxt
        )
        return move_step(direction)

    def _action_target_cell(self, action: PlannedAction) -> Cell | None:
        graph = self.bundle.graph
        if action.name in ("move_towards", "elude"):
            return graph.cell_of(action.args[0])
        if action.name in ("pick_health", "pick_ammo"):
            sightings = self._percept.items_seen if self._percept else ()
            sighting = next((s for s in sightings if s.item_id == action.args[0]), None)
            if sighting is None:
                return None
            return graph.cell_of(sighting.waypoint)
        return None  # attack has no fixed destination

    def _start_action(self, action: PlannedAction, percept: Percept) -> ActionProgress:
        expected = 1
        target = self._action_target_cell(action)
        if target is not None:
            expected = max(1, len(shortest_path(self.bundle.grid, percept.me.cell, target)) - 1)
        elif action.name == "attack":
            expected = max(1, self.config.attack_patience_ticks // self.config.stuck_factor)
        progress = ActionProgress(action=action, expected_ticks=expected)
        self._emit("action_started", percept.tick, action=action.render())
        return progress

    def execute_action_tick(self, percept: Percept) -> tuple[Command | None, bool]:
        """One command toward the active action's goal; (None, True) once done.

        Raises ActionStuck past 3x the expected path length.
        """
        progress = self.state.progress
        assert progress is not None
        action = progress.action
        if action.name == "attack":
            return self._attack_tick(percept, progress)
        target = self._action_target_cell(action)
        if target is None:
            raise ActionStuck(f"{action.render()}: unknown target")
        if percept.me.cell == target:
            return None, True
        progress.ticks_in_action += 1
        if progress.ticks_in_action > self.config.stuck_factor * progress.expected_ticks:
            raise ActionStuck(
                f"{action.render()}: no completion after {progress.ticks_in_action} ticks"
            )
        return self._step_towards(percept.me.cell, target), False

    def _attack_tick(self, percept: Percept, progress: ActionProgress) -> tuple[Command | None, bool]:
        """Built-in combat behavior: turn toward the enemy and fire while
        line of sight holds; path toward the expected position otherwise."""
        progress.ticks_in_action += 1
        if percept.enemy_visible is not None:
            progress.enemy_unseen_ticks = 0
            enemy_cell = percept.enemy_visible[0]
            want = principal_direction(percept.me.cell, enemy_cell)
            if percept.me.facing != want:
                return turn(want), False
            return FIRE, False
        progress.enemy_unseen_ticks += 1
        if progress.enemy_unseen_ticks > self.config.attack_patience_ticks:
            raise ActionStuck("attack: enemy lost")
        ref = self._enemy_reference(percept)
        if ref is None:
            return IDLE, False
        target = self.bundle.graph.cell_of(ref)
        if percept.me.cell == target:
            return IDLE, False  # hold the expected position until re-sighted
        return self._step_towards(percept.me.cell, target), False

    # -- pre-emption -------------------------------------------------------------

    def _enemy_reference(self, percept: Percept) -> str | None:
        """Expected enemy waypoint: model prediction, else the live sighting."""
        if self.opponent.last_seen is not None:
            return self.opponent.predict_next(self.opponent.last_seen[0])
        if percept.enemy_visible is not None:
            return nearest_waypoint(self.bundle.grid, self.bundle.graph, percept.enemy_visible[0])
        return None

    def _fallback_reaction(self, percept: Percept) -> PlannedAction | None:
        ref = self._enemy_reference(percept)
        if ref is None:
            return None
        dist = self.bundle.graph.distances_from(ref)
        here = nearest_waypoint(self.bundle.grid, self.bundle.graph, percept.me.cell)
        neighbors = self.bundle.graph.neighbors(here)
        if not neighbors:
            return None
        target = min(neighbors, key=lambda w: (-dist.get(w, 0), w))
        return PlannedAction("elude", (target,))

    def dispatch_preemption(self, emergencies: set[str], percept: Percept) -> Command | None:
        """Start (or continue) the reaction for the highest-priority
        emergency; None when no rule applies and the cycle resumes."""
        emergency = next(e for e in EMERGENCY_PRIORITY if e in emergencies)
        state = self.state
        if (
            state.mode == "reacting"
            and state.progress is not None
            and state.last_preemption is not None
            and EMERGENCY_PRIORITY.index(emergency)
            >= EMERGENCY_PRIORITY.index(state.last_preemption["emergency"])
        ):
            # Already handling an emergency of equal or higher priority:
            # let the running reaction finish instead of thrashing.
            return self._run_reaction(percept)
        if state.preemption is not None and state.plan is not None:
            action = state.preemption.action_for(state.current_step, emergency)
            step: int | None = state.current_step
        else:
            action = self._fallback_reaction(percept)
            step = None
        if action is None:
            return None  # no applicable rule: the execution cycle resumes
        self._emit(
            "preemption_fired",
            percept.tick,
            step=step,
            emergency=emergency,
            action=action.render(),
        )
        state.last_preemption = {
            "tick": percept.tick,
            "step": step,
            "emergency": emergency,
            "action": action.render(),
        }
        self._drop_plan()
        state.mode = "reacting"
        state.progress = self._start_action(action, percept)
        return self._run_reaction(percept)

    def _run_reaction(self, percept: Percept) -> Command:
        try:
            command, done = self.execute_action_tick(percept)
        except ActionStuck:
            command, done = None, True
        if done:
            self._finish_reaction(percept)
            return self._hide_command(percept)
        return command if command is not None else IDLE

    def _drop_plan(self) -> None:
        state = self.state
        state.plan = None
        state.preemption = None
        state.trajectory = ()
        state.assumptions = ()
        state.current_step = 0
        state.progress = None
        if state.outstanding_request:
            # Supersede the in-flight request: its fluents predate this event.
            state.request_id += 1
            state.outstanding_request = False

    def _finish_reaction(self, percept: Percept) -> None:
        self.state.progress = None
        self.state.mode = "planning_hiding"
        if not self.state.outstanding_request:
            self._request_plan(percept)

    # -- hiding ---------------------------------------------------------------------

    def _hide_command(self, percept: Percept) -> Command:
        """Path to the waypoint with no line of sight to the expected enemy,
        maximizing graph distance from it (ties to the smallest id)."""
        ref = self._enemy_reference(percept)
        if ref is None:
            return IDLE
        grid, graph = self.bundle.grid, self.bundle.graph
        ref_cell = graph.cell_of(ref)
        dist = graph.distances_from(ref)
        hidden = [w for w in graph.ids() if not line_of_sight(grid, graph.cell_of(w), ref_cell)]
        pool = hidden or list(graph.ids())
        target = min(pool, key=lambda w: (-dist.get(w, 0), w))
        target_cell = graph.cell_of(target)
        if percept.me.cell == target_cell:
            return IDLE
        return self._step_towards(percept.me.cell, target_cell)

    # -- the cycle --------------------------------------------------------------------

    def tick(self, world: WorldState) -> Command:
        """Sense -> emergencies -> plan availability -> validate -> execute.

        Exactly one command per call; every failure degrades to replanning.
        """
        percept = self._observe(world)
        self._accept_deliveries(percept.tick)
        state = self.state

        emergencies = detect_emergencies(percept, self.config.r_combat)
        if emergencies:
            command = self.dispatch_preemption(emergencies, percept)
            if command is not None:
                return command

        if state.mode == "reacting":
            return self._run_reaction(percept)

        if state.plan is None:
            if not state.outstanding_request:
                self._request_plan(percept)
            return self._hide_command(percept)

        violated = self.check_plan_valid(percept)
        if violated is not None:
            self._emit("plan_invalidated", percept.tick, assumption=violated.render())
            self._drop_plan()
            self._request_plan(percept)
            return self._hide_command(percept)

        state.mode = "executing"
        if state.progress is None:
            state.progress = self._start_action(state.plan.steps[state.current_step], percept)
        try:
            command, done = self.execute_action_tick(percept)
        except ActionStuck as exc:
            self._emit("plan_invalidated", percept.tick, assumption=f"stuck:{exc}")
            self._drop_plan()
            self._request_plan(percept)
            return self._hide_command(percept)
        if not done:
            return command if command is not None else IDLE
        self._emit("action_done", percept.tick, action=state.progress.action.render())
        state.current_step += 1
        state.progress = None
        if state.current_step >= len(state.plan):
            self._drop_plan()
            self._request_plan(percept)
            return self._hide_command(percept)
        state.progress = self._start_action(state.plan.steps[state.current_step], percept)
        command, done_next = self.execute_action_tick(percept)
        if done_next or command is None:
            # Zero-length follow-up (e.g. pick at the current cell): completion
            # is recorded on the next tick.
            return IDLE
        return command
