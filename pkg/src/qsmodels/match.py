"""Match orchestration: configuration, clocks, solver workers, scripted
enemies, and the headless match loop.

Three cooperating flows: this tick loop (sole owner of world and executive
state), the solver worker, and -- in served duels -- the network session.
All cross-flow traffic is immutable request/response values.
"""

from __future__ import annotations

import queue
import random
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Protocol

from .arena import (
    DELTA,
    DIRECTIONS,
    FIRE,
    IDLE,
    Command,
    MapBundle,
    WorldState,
    CombatConfig,
    DEFAULT_COMBAT,
    initial_world,
    line_of_sight,
    load_map,
    move_step,
    shortest_path,
    step,
)
from .events import EventLog, MatchReport, rebuild_report
from .executive import Executive, ExecutiveConfig, PlanDelivery, PlanRequest
from .planning import MalformedAnswerSet
from .solvers import (
    Backend,
    ExternalBackend,
    NoPlan,
    OracleBackend,
    backend_from_spec,
    backend_override,
    plan_with_deepening,
)


class ConfigError(Exception):
    pass


ENEMY_KINDS = ("patrol", "aggressive", "random", "human")


@dataclass(frozen=True)
class MatchConfig:
    map_path: str | None = None
    map_text: str | None = None
    seed: int = 0
    tick_period_ms: int = 100  # 10 Hz sensing/acting
    horizon_max: int = 8
    solver: str = "oracle"  # "oracle" | "external"
    enemy: str = "patrol"
    time_mode: str = "fast"  # "fast" | "realtime"
    duration_ticks: int = 600
    serve_address: str | None = None
    log_path: str | None = None
    enemy_armed_tier: int = 1
    assumed_enemy_tier: int = 1  # the bot's prior on the enemy loadout

    def validate(self) -> None:
        if (self.map_path is None) == (self.map_text is None):
            raise ConfigError("exactly one of map_path / map_text is required")
        if self.enemy not in ENEMY_KINDS:
            raise ConfigError(f"enemy must be one of {ENEMY_KINDS}, got {self.enemy!r}")
        if self.time_mode not in ("fast", "realtime"):
            raise ConfigError(f"time mode must be fast or realtime, got {self.time_mode!r}")
        if self.solver not in ("oracle", "external"):
            raise ConfigError(f"solver must be oracle or external, got {self.solver!r}")
        if self.enemy == "human" and (self.serve_address is None or self.time_mode != "realtime"):
            raise ConfigError("human enemy requires a serve address and realtime mode")
        if self.duration_ticks < 0 or self.tick_period_ms <= 0 or self.horizon_max < 1:
            raise ConfigError("durations and horizons must be positive")

    def load_bundle(self) -> MapBundle:
        text = self.map_text if self.map_text is not None else Path(self.map_path).read_text()
        return load_map(text)


def make_backend(config: MatchConfig) -> Backend:
    override = backend_override()
    if override:
        if override == "oracle":
            return OracleBackend()
        return ExternalBackend(backend_from_spec(override))
    if config.solver == "oracle":
        return OracleBackend()
    return ExternalBackend()


# -- clocks ---------------------------------------------------------------------


class SimClock:
    """Logical time: exactly tick_period_ms per tick, wall delays invisible."""

    def __init__(self, tick_period_ms: int) -> None:
        self.tick_period_ms = tick_period_ms
        self.ticks = 0

    def now_ms(self) -> float:
        return float(self.ticks * self.tick_period_ms)

    def advance(self) -> None:
        self.ticks += 1


class RealClock:
    def now_ms(self) -> float:
        return time.monotonic() * 1000.0

    def advance(self) -> None:
        pass


# -- plan services -----------------------------------------------------------------


def _solve_request(request: PlanRequest, backend: Backend) -> PlanDelivery:
    try:
        outcome = plan_with_deepening(request.problem, request.horizon_max, backend)
    except MalformedAnswerSet as exc:
        outcome = NoPlan(diagnostic=f"malformed answer set: {exc}")
    return PlanDelivery(request_id=request.request_id, outcome=outcome)


class SynchronousPlanService:
    """Deterministic worker for fast mode: solves at submit time, delivers at
    the next tick's poll, so logical latency is always one tick."""

    def __init__(self, backend: Backend) -> None:
        self.backend = backend
        self._pending: PlanDelivery | None = None

    def submit(self, request: PlanRequest) -> None:
        self._pending = _solve_request(request, self.backend)

    def poll(self) -> PlanDelivery | None:
        delivery, self._pending = self._pending, None
        return delivery


class ThreadedPlanService:
    """Real worker thread for realtime mode; the tick loop never blocks."""

    def __init__(self, backend: Backend) -> None:
        self.backend = backend
        self._requests: queue.Queue[PlanRequest | None] = queue.Queue()
        self._results: queue.Queue[PlanDelivery] = queue.Queue()
        self._thread = threading.Thread(target=self._run, daemon=True)
        self._thread.start()

    def _run(self) -> None:
        while True:
            request = self._requests.get()
            if request is None:
                return
            self._results.put(_solve_request(request, self.backend))

    def submit(self, request: PlanRequest) -> None:
        self._requests.put(request)

    def poll(self) -> PlanDelivery | None:
        try:
            return self._results.get_nowait()
        except queue.Empty:
            return None

    def shutdown(self) -> None:
        self._requests.put(None)


# -- scripted enemies ----------------------------------------------------------------


class EnemyController(Protocol):
    def decide(self, world: WorldState) -> Command: ...


def _step_towards(world: WorldState, src, dst) -> Command:
    if src == dst:
        return IDLE
    path = shortest_path(world.grid, src, dst)
    nxt = path[1]
    direction = next(
        d for d, (dx, dy) in DELTA.items() if (src[0] + dx, src[1] + dy) == nxt
    )
    return move_step(direction)


class PatrolEnemy:
    """Walks back and forth between its spawn waypoint and that waypoint's
    smallest-id graph neighbor."""

    def __init__(self, bundle: MapBundle) -> None:
        graph = bundle.graph
        home = next(
            wid for wid, cell in graph.waypoints if cell == bundle.enemy_spawn
        )
        neighbors = graph.neighbors(home)
        self._route = [graph.cell_of(home), graph.cell_of(neighbors[0])] if neighbors else [
            graph.cell_of(home)
        ]
        self._leg = 1 if len(self._route) > 1 else 0

    def decide(self, world: WorldState) -> Command:
        target = self._route[self._leg]
        if world.enemy.cell == target:
            self._leg = (self._leg + 1) % len(self._route)
            target = self._route[self._leg]
        return _step_towards(world, world.enemy.cell, target)


class AggressiveEnemy:
    """Paths toward the bot; fires whenever the bot is in sight and range."""

    def __init__(self, combat: CombatConfig = DEFAULT_COMBAT) -> None:
        self.combat = combat

    def decide(self, world: WorldState) -> Command:
        dx = world.bot.cell[0] - world.enemy.cell[0]
        dy = world.bot.cell[1] - world.enemy.cell[1]
        in_range = dx * dx + dy * dy <= self.combat.r_combat**2
        if in_range and line_of_sight(world.grid, world.enemy.cell, world.bot.cell):
            return FIRE
        return _step_towards(world, world.enemy.cell, world.bot.cell)


class RandomEnemy:
    """Uniform walk among legal moves via the seeded generator."""

    def __init__(self, rng: random.Random) -> None:
        self.rng = rng

    def decide(self, world: WorldState) -> Command:
        cx, cy = world.enemy.cell
        legal = [
            d for d in DIRECTIONS if world.grid.is_floor((cx + DELTA[d][0], cy + DELTA[d][1]))
        ]
        if not legal:
            return IDLE
        return move_step(self.rng.choice(legal))


class StationaryEnemy:
    def decide(self, world: WorldState) -> Command:
        return IDLE


class SequenceEnemy:
    """Replays a fixed command list, then idles (test scenarios)."""

    def __init__(self, commands: list[Command]) -> None:
        self.commands = list(commands)
        self._i = 0

    def decide(self, world: WorldState) -> Command:
        if self._i < len(self.commands):
            cmd = self.commands[self._i]
            self._i += 1
            return cmd
        return IDLE


def make_enemy(config: MatchConfig, bundle: MapBundle, rng: random.Random) -> EnemyController:
    if config.enemy == "patrol":
        return PatrolEnemy(bundle)
    if config.enemy == "aggressive":
        return AggressiveEnemy()
    if config.enemy == "random":
        return RandomEnemy(rng)
    raise ConfigError(f"enemy controller {config.enemy!r} requires the duel service")


# -- the match loop -------------------------------------------------------------------


def _sleep_until(deadline: float) -> None:
    while True:
        remaining = deadline - time.monotonic()
        if remaining <= 0:
            return
        if remaining > 0.003:
            time.sleep(remaining - 0.002)
        # spin the last couple of milliseconds for tight cadence


def run_match(
    config: MatchConfig,
    *,
    enemy_controller: EnemyController | None = None,
    plan_service=None,
    event_log: EventLog | None = None,
    instrumentation: dict | None = None,
    on_tick: Callable[[WorldState, Executive], None] | None = None,
) -> MatchReport:
    """Drive simulator + executive + enemy controller to completion.

    Fully deterministic in fast mode with scripted enemies: identical
    configs give bit-identical event logs and reports.
    """
    config.validate()
    bundle = config.load_bundle()
    world = initial_world(bundle, seed=config.seed, enemy_armed_tier=config.enemy_armed_tier)
    rng = random.Random(config.seed)
    log = event_log if event_log is not None else EventLog()
    if config.log_path and log.stream is None:
        log.stream = open(config.log_path, "w", encoding="utf-8")

    realtime = config.time_mode == "realtime"
    clock = RealClock() if realtime else SimClock(config.tick_period_ms)
    backend = make_backend(config)
    service = plan_service
    owns_service = service is None
    if owns_service:
        service = ThreadedPlanService(backend) if realtime else SynchronousPlanService(backend)
    executive = Executive(
        bundle,
        service,
        ExecutiveConfig(
            horizon_max=config.horizon_max,
            enemy_tier_estimate=config.assumed_enemy_tier,
        ),
        event_sink=log.append,
        now_ms=clock.now_ms,
    )
    enemy = enemy_controller if enemy_controller is not None else make_enemy(config, bundle, rng)

    tick_stamps: list[float] = []
    outcome = "timeout"
    period_s = config.tick_period_ms / 1000.0
    start = time.monotonic()
    try:
        for i in range(config.duration_ticks):
            if realtime:
                _sleep_until(start + i * period_s)
                tick_stamps.append(time.monotonic() * 1000.0)
            bot_cmd = executive.tick(world)
            enemy_cmd = enemy.decide(world)
            world = step(world, bot_cmd, enemy_cmd)
            clock.advance()
            if on_tick is not None:
                on_tick(world, executive)
            if world.enemy.health == 0:
                outcome = "bot_win"
                break
            if world.bot.health == 0:
                outcome = "enemy_win"
                break
    finally:
        if owns_service and isinstance(service, ThreadedPlanService):
            service.shutdown()

    log.append({"event": "opponent_counts", "tick": world.tick, **executive.opponent.to_record()})
    if instrumentation is not None:
        instrumentation["tick_monotonic_ms"] = tick_stamps
        instrumentation["final_world"] = world
        instrumentation["executive"] = executive
    if log.stream is not None and config.log_path:
        log.stream.close()
        log.stream = None
    return rebuild_report(log.records, outcome=outcome, ticks=world.tick)
