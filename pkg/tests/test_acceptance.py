"""Acceptance suite: one test per acceptance criterion, each printing a
pass/fail line in the terminal summary.

The realtime tick-fidelity check runs a genuine 60 s wall-clock match and
dominates the suite's runtime; everything else is seconds.
"""

from __future__ import annotations

import random
import threading
import time

import pytest

from qsmodels.arena import FIRE, IDLE, WaypointGraph, initial_world, load_map
from qsmodels.events import EventLog, rebuild_report
from qsmodels.executive import PlanDelivery
from qsmodels.match import (
    MatchConfig,
    StationaryEnemy,
    run_match,
)
from qsmodels.opponent import OpponentModel
from qsmodels.perception import Fluent, FluentSnapshot
from qsmodels.planning import (
    ItemFact,
    PlanningProblem,
    decode_plan,
    decode_preemption,
    encode,
    replay_plan,
)
from qsmodels.solvers import (
    NoPlan,
    OracleBackend,
    Sat,
    SolverFailure,
    discover_backend,
    plan_with_deepening,
    solve_external,
    solve_oracle,
)
from conftest import ACCEPTANCE_RESULTS, CORRIDOR_MAP, T1_MAP, WEAPON_MAP
from instance_family import HORIZONS, instance_family
from scenario import drive


@pytest.fixture(autouse=True)
def record_outcome(request):
    name = request.node.name
    ACCEPTANCE_RESULTS[name] = "FAIL"
    yield
    # only reached on test-body success
    if ACCEPTANCE_RESULTS[name] == "FAIL":
        ACCEPTANCE_RESULTS[name] = "PASS"


class SleepingStubService:
    """Planner that takes 5 wall seconds per request and never finds a plan."""

    def __init__(self, delay_s: float = 5.0) -> None:
        self.delay_s = delay_s
        self._lock = threading.Lock()
        self._ready: list[PlanDelivery] = []

    def submit(self, request) -> None:
        def work():
            time.sleep(self.delay_s)
            with self._lock:
                self._ready.append(
                    PlanDelivery(request.request_id, NoPlan("stub: still thinking"))
                )

        threading.Thread(target=work, daemon=True).start()

    def poll(self):
        with self._lock:
            return self._ready.pop(0) if self._ready else None


class DelayedTickStubService:
    """Simulated-time analogue: delivers NoPlan after a fixed tick count."""

    def __init__(self, delay_ticks: int = 50) -> None:
        self.delay_ticks = delay_ticks
        self._pending: list[tuple[int, PlanDelivery]] = []

    def submit(self, request) -> None:
        self._pending.append(
            (self.delay_ticks, PlanDelivery(request.request_id, NoPlan("stub")))
        )

    def poll(self):
        if not self._pending:
            return None
        remaining, delivery = self._pending[0]
        if remaining <= 0:
            self._pending.pop(0)
            return delivery
        self._pending[0] = (remaining - 1, delivery)
        return None


def test_tick_rate_fidelity():
    """10 Hz cadence: realtime jitter <= 10 ms under a 5 s solver stub;
    simulated time exact."""
    instrumentation: dict = {}
    config = MatchConfig(
        map_text=CORRIDOR_MAP,
        seed=1,
        time_mode="realtime",
        duration_ticks=600,  # 60 s at the default 100 ms period
        tick_period_ms=100,
    )
    run_match(
        config,
        enemy_controller=StationaryEnemy(),
        plan_service=SleepingStubService(5.0),
        instrumentation=instrumentation,
    )
    stamps = instrumentation["tick_monotonic_ms"]
    assert len(stamps) == 600
    deltas = [b - a for a, b in zip(stamps, stamps[1:])]
    worst = max(abs(d - 100.0) for d in deltas)
    assert worst <= 10.0, f"worst inter-command jitter {worst:.2f} ms exceeds 10 ms"

    # Simulated mode: the same stub in tick units; cadence is exact by clock.
    log = EventLog()
    sim = MatchConfig(map_text=CORRIDOR_MAP, seed=1, time_mode="fast", duration_ticks=600)
    report = run_match(
        sim,
        enemy_controller=StationaryEnemy(),
        plan_service=DelayedTickStubService(50),
        event_log=log,
    )
    assert report.ticks == 600  # one command per tick, none skipped
    for record in log.records:
        if record["event"] == "plan_ready":
            assert record["latency_ms"] % 100 == 0  # exact tick multiples


def _random_solvable_problem(rng: random.Random) -> PlanningProblem:
    from qsmodels.arena import AMMO, HEALTH, weapon

    n = rng.randint(3, 8)
    ids = [f"w{i}" for i in range(n)]
    cells = tuple((w, (i + 1, 1)) for i, w in enumerate(ids))
    edges = {(ids[i], ids[i + 1]) for i in range(n - 1)}
    for _ in range(rng.randint(0, n // 2)):
        a, b = rng.sample(ids, 2)
        edges.add((min(a, b), max(a, b)))
    graph = WaypointGraph(
        waypoints=cells, edges=frozenset((min(a, b), max(a, b)) for a, b in edges)
    )
    kinds = [HEALTH, AMMO, weapon(2), weapon(3)]
    items = tuple(
        ItemFact(f"i{k}", rng.choice(ids), rng.choice(kinds))
        for k in range(rng.randint(0, 4))
    )
    health = rng.choice(("medium", "high"))
    fluents = {
        Fluent("at", (rng.choice(ids),)),
        Fluent("health_level", (health,)),
        Fluent("armed", (str(rng.choice((1, 2, 3))),)),
        Fluent("ammo_ok"),
        Fluent("enemy_expected", (rng.choice(ids),)),
    }
    for fact in items:
        fluents.add(
            Fluent("item_available", (fact.item_id, fact.waypoint, fact.kind.render()))
        )
    return PlanningProblem(
        snapshot=FluentSnapshot(0, frozenset(fluents)),
        graph=graph,
        items=items,
        horizon=1,
        enemy_tier_estimate=rng.choice((1, 2)),
    )


def _collect_decoded_plans(minimum: int):
    rng = random.Random(20240615)
    backend = OracleBackend()
    results = []
    guard = 0
    while len(results) < minimum and guard < minimum * 10:
        guard += 1
        outcome = plan_with_deepening(_random_solvable_problem(rng), 6, backend)
        if not isinstance(outcome, NoPlan):
            results.append(outcome)
    return results


_DECODED = _collect_decoded_plans(500)


def test_attack_last_invariant():
    """>= 500 decoded plans across randomized desk-scale problems all end
    in attack."""
    assert len(_DECODED) >= 500
    for outcome in _DECODED:
        assert outcome.plan.steps[-1].render() == "attack"
    external = discover_backend()
    if external is not None:
        rng = random.Random(7)
        checked = 0
        while checked < 25:
            problem = _random_solvable_problem(rng)
            for horizon in range(1, 7):
                result = solve_external(encode(problem.with_horizon(horizon)), config=external)
                if isinstance(result, Sat):
                    assert decode_plan(result.answer).steps[-1].render() == "attack"
                    checked += 1
                    break


def test_oracle_encoder_equivalence():
    """External-backend satisfiability equals oracle satisfiability over the
    exhaustive family; every Sat decodes to a replay-sound plan. The
    external half is skipped when no solver is installed."""
    external = discover_backend()
    for problem in instance_family():
        for horizon in HORIZONS:
            sized = problem.with_horizon(horizon)
            result = solve_oracle(sized)
            if isinstance(result, Sat):
                plan = decode_plan(result.answer)
                assert replay_plan(sized, plan.steps), (
                    f"unsound oracle plan on {sized.graph.ids()} h={horizon}"
                )
    if external is None:
        ACCEPTANCE_RESULTS["test_oracle_encoder_equivalence"] = (
            "PASS (oracle half only: no external solver installed)"
        )
        return
    for problem in instance_family()[::5]:
        for horizon in HORIZONS:
            sized = problem.with_horizon(horizon)
            oracle_sat = isinstance(solve_oracle(sized), Sat)
            result = solve_external(encode(sized), config=external)
            assert not isinstance(result, SolverFailure), result
            assert isinstance(result, Sat) == oracle_sat
            if isinstance(result, Sat):
                assert replay_plan(sized, decode_plan(result.answer).steps)


def test_preemption_totality_and_dispatch():
    """Every decoded table is total (horizon x 3); a step-1 emergency starts
    the (1, under_attack) reaction within one tick and cancels the residual
    plan."""
    for outcome in _DECODED[:200]:
        assert len(outcome.preemption.entries) == outcome.horizon * 3

    bundle = load_map(CORRIDOR_MAP)
    from qsmodels.events import EventLog as Log
    from qsmodels.executive import Executive, ExecutiveConfig
    from qsmodels.match import SimClock, SynchronousPlanService
    from qsmodels.arena import step as world_step
    from dataclasses import replace

    world = initial_world(bundle, seed=0)
    world = world.with_changes(
        bot=replace(world.bot, health=25), enemy=replace(world.enemy, facing="N")
    )
    clock = SimClock(100)
    log = Log()
    executive = Executive(
        bundle,
        SynchronousPlanService(OracleBackend()),
        ExecutiveConfig(),
        event_sink=log.append,
        now_ms=clock.now_ms,
    )
    fire_tick = None
    residual = None
    for i in range(40):
        bot_cmd = executive.tick(world)
        state = executive.state
        enemy_cmd = IDLE
        if (
            fire_tick is None
            and state.plan is not None
            and state.mode == "executing"
            and state.current_step == 1
        ):
            fire_tick = world.tick
            residual = [a.render() for a in state.plan.steps[state.current_step:]]
        if fire_tick == world.tick:
            enemy_cmd = FIRE
        world = world_step(world, bot_cmd, enemy_cmd)
        clock.advance()
        if world.bot.health == 0 or world.enemy.health == 0:
            break
    assert fire_tick is not None, "bot never reached plan step 1"
    fired = [r for r in log.records if r["event"] == "preemption_fired"]
    hit = next(r for r in fired if r["emergency"] == "under_attack")
    assert hit["tick"] == fire_tick + 1  # reaction begins within 1 tick
    assert hit["step"] == 1
    assert hit["action"] == "elude(w0)"  # the (1, under_attack) table entry
    idx = log.records.index(hit)
    next_ready = next(
        (
            j
            for j in range(idx, len(log.records))
            if log.records[j]["event"] == "plan_ready"
        ),
        len(log.records),
    )
    between = log.records[idx:next_ready]
    started = [r["action"] for r in between if r["event"] == "action_started"]
    for action in started:
        assert action not in residual or action == hit["action"], (
            f"residual plan action {action} executed after pre-emption"
        )
    assert not any(a in ("pick_health(h1)", "attack") and a != hit["action"] for a in started)


def test_invalidation_scenario():
    """Enemy consumes the weapon the plan targets: plan_invalidated within
    one tick of the revealing percept, then a new plan_requested."""
    from qsmodels.arena import move_step
    from qsmodels.match import SequenceEnemy

    bundle = load_map(WEAPON_MAP)
    reveal = {}

    def watch(world, executive):
        if not world.items[0].available and "tick" not in reveal:
            reveal["tick"] = world.tick  # first world state with g1 gone

    run = drive(
        bundle,
        SequenceEnemy([move_step("W")] * 3),
        20,
        assumed_enemy_tier=2,
        on_tick=watch,
    )
    invalidated = next(r for r in run.log.records if r["event"] == "plan_invalidated")
    assert "item_available(g1" in invalidated["assumption"]
    assert invalidated["tick"] - reveal["tick"] <= 1
    idx = run.log.records.index(invalidated)
    following = run.log.records[idx + 1:]
    assert following[0]["event"] == "plan_requested"


def test_determinism():
    """Fast mode, seed 42, patrol enemy, oracle backend: bit-identical event
    logs and reports across 3 runs."""
    payloads = []
    for _ in range(3):
        log = EventLog()
        report = run_match(
            MatchConfig(map_text=T1_MAP, seed=42, enemy="patrol", duration_ticks=400),
            event_log=log,
        )
        payloads.append(log.to_jsonl() + repr(report.as_dict()))
    assert payloads[0] == payloads[1] == payloads[2]


def test_opponent_model_acceptance():
    """predict_next equals the hand-computed argmax for every source on a
    fixed sighting script; count scaling leaves predictions unchanged."""
    script = [
        ("w2", 0), ("w1", 3), ("w2", 6), ("w1", 9), ("w2", 12), ("w0", 15),
        ("w1", 18), ("w0", 21), ("w1", 24), ("w2", 27), ("w1", 30), ("w3", 33),
        ("w3", 70), ("w2", 72),
    ]
    model = OpponentModel()
    for wp, tick in script:
        model.observe(wp, tick)
    # hand-tallied transitions within the 30-tick window (the w3@33 -> w3@70
    # pair is both a self-transition and a stale gap, so it never counts):
    # w2->w1: 3, w2->w0: 1, w1->w2: 3, w1->w0: 1, w1->w3: 1, w0->w1: 2, w3->w2: 1
    assert model.counts == {
        ("w2", "w1"): 3,
        ("w2", "w0"): 1,
        ("w1", "w2"): 3,
        ("w1", "w0"): 1,
        ("w1", "w3"): 1,
        ("w0", "w1"): 2,
        ("w3", "w2"): 1,
    }
    expected = {"w0": "w1", "w1": "w2", "w2": "w1", "w3": "w2", "w9": "w9"}
    for source, predicted in expected.items():
        assert model.predict_next(source) == predicted
    for scale in (2, 5, 1000):
        scaled = OpponentModel(counts={k: v * scale for k, v in model.counts.items()})
        for source in ("w0", "w1", "w2", "w3"):
            assert scaled.predict_next(source) == model.predict_next(source)


def test_latency_accounting():
    """Every plan_ready carries latency_ms; the report histogram and latency
    list rebuild from the log with zero discrepancies."""
    log = EventLog()
    report = run_match(
        MatchConfig(map_text=WEAPON_MAP, seed=9, enemy="patrol", duration_ticks=500),
        event_log=log,
    )
    ready = [r for r in log.records if r["event"] == "plan_ready"]
    assert ready, "the match must produce at least one plan"
    for record in ready:
        assert isinstance(record["latency_ms"], (int, float))
        assert record["latency_ms"] >= 0
    rebuilt = rebuild_report(log.records, outcome=report.outcome, ticks=report.ticks)
    assert rebuilt.horizon_histogram == report.horizon_histogram
    assert rebuilt.plan_latencies_ms == report.plan_latencies_ms
    assert rebuilt == report
