"""Sensing and fluent translation."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsmodels.arena import IDLE, initial_world, load_map, move_step, step
from qsmodels.opponent import OpponentModel
from qsmodels.perception import (
    AMMO_OK,
    Fluent,
    FluentSnapshot,
    health_level,
    sense,
    to_fluents,
)
from conftest import T1_MAP, random_map_text

WALLED_MAP = """\
#######
#..#..#
#..#..#
#.....#
#######
waypoints: w0 1 1 ; w1 5 1 ; w2 1 3
edges: w0 w2 ; w1 w2
items: a1 ammo w1
spawn: bot w0 ; enemy w1
"""


class TestSense:
    def test_enemy_behind_wall_not_visible(self):
        world = initial_world(load_map(WALLED_MAP), seed=0)
        percept = sense(world)
        assert percept.enemy_visible is None

    def test_damage_taken_is_health_delta(self, t1):
        world = initial_world(t1, seed=0)
        first = sense(world)
        hurt = world.with_changes(
            bot=world.bot.__class__(role="bot", cell=(1, 1), facing="E", health=65),
            tick=1,
        )
        second = sense(hurt, first)
        assert second.damage_taken == 35

    def test_item_memory_with_staleness(self):
        bundle = load_map(WALLED_MAP)
        world = initial_world(bundle, seed=0)
        # bot near the gap sees a1's waypoint; then walks behind the wall
        world = world.with_changes(
            bot=world.bot.__class__(role="bot", cell=(4, 3), facing="E")
        )
        seen = sense(world)
        assert any(s.item_id == "a1" and s.staleness == 0 for s in seen.items_seen)
        hidden = world.with_changes(
            bot=world.bot.__class__(role="bot", cell=(1, 1), facing="E"), tick=1
        )
        remembered = sense(hidden, seen)
        sighting = next(s for s in remembered.items_seen if s.item_id == "a1")
        assert sighting.staleness == 1
        assert sighting.available

    def test_sense_never_mutates_world(self, t1):
        world = initial_world(t1, seed=0)
        snapshot = (world.tick, world.bot, world.enemy, world.items)
        sense(world)
        assert (world.tick, world.bot, world.enemy, world.items) == snapshot


class TestHealthLevels:
    @pytest.mark.parametrize(
        "health,expected",
        [(0, "low"), (25, "low"), (30, "low"), (31, "medium"), (70, "medium"), (71, "high"), (100, "high")],
    )
    def test_thresholds(self, health, expected):
        assert health_level(health) == expected

    @given(st.integers(0, 100), st.integers(0, 100))
    def test_monotone(self, a, b):
        order = {"low": 0, "medium": 1, "high": 2}
        if a <= b:
            assert order[health_level(a)] <= order[health_level(b)]


class TestToFluents:
    def test_defaults_at_full_health(self, t1):
        world = initial_world(t1, seed=0)
        snap = to_fluents(sense(world), OpponentModel(), t1.grid, t1.graph)
        assert Fluent("at", ("w0",)) in snap.fluents
        assert Fluent("health_level", ("high",)) in snap.fluents
        assert Fluent("armed", ("1",)) in snap.fluents
        assert AMMO_OK in snap.fluents

    def test_low_health_threshold(self, t1):
        world = initial_world(t1, seed=0)
        world = world.with_changes(
            bot=world.bot.__class__(role="bot", cell=(1, 1), facing="E", health=25)
        )
        snap = to_fluents(sense(world), OpponentModel(), t1.grid, t1.graph)
        assert Fluent("health_level", ("low",)) in snap.fluents

    def test_enemy_expected_follows_argmax(self, t1):
        model = OpponentModel()
        # w2->w1 three times, w2->w0 once
        ticks = iter(range(0, 100, 2))
        for dst in ("w1", "w2", "w1", "w2", "w1", "w2", "w0", "w2"):
            model.observe("w2", next(ticks))
            model.observe(dst, next(ticks))
        model.observe("w2", 98)
        world = initial_world(t1, seed=0)
        snap = to_fluents(sense(world), model, t1.grid, t1.graph)
        assert Fluent("enemy_last_seen", ("w2",)) in snap.fluents
        assert Fluent("enemy_expected", ("w1",)) in snap.fluents

    def test_nearest_waypoint_tiebreak_smallest_id(self, t1):
        world = initial_world(t1, seed=0)
        # (2,2) is distance 1 from w1 (2,1); distance 2 from w0/w2: unique nearest
        world = world.with_changes(
            bot=world.bot.__class__(role="bot", cell=(2, 2), facing="E")
        )
        snap = to_fluents(sense(world), OpponentModel(), t1.grid, t1.graph)
        assert Fluent("at", ("w1",)) in snap.fluents

    def test_snapshot_invariants_over_random_simulations(self):
        rng = random.Random(7)
        for _ in range(15):
            bundle = load_map(random_map_text(rng))
            world = initial_world(bundle, seed=rng.randint(0, 999))
            model = OpponentModel()
            percept = None
            for _ in range(30):
                percept = sense(world, percept)
                if percept.enemy_visible is not None:
                    from qsmodels.arena import nearest_waypoint

                    model.observe(
                        nearest_waypoint(bundle.grid, bundle.graph, percept.enemy_visible[0]),
                        percept.tick,
                    )
                snap = to_fluents(percept, model, bundle.grid, bundle.graph)
                snap.validate()  # raises on any invariant breach
                world = step(world, move_step(rng.choice("NESW")), move_step(rng.choice("NESW")))

    def test_snapshot_invariant_validation_rejects_bad_sets(self):
        snap = FluentSnapshot(0, frozenset({Fluent("at", ("w0",)), Fluent("at", ("w1",))}))
        with pytest.raises(ValueError):
            snap.validate()
