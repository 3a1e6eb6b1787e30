"""Encoder, decoder, and action-semantics tests with frozen oracle values."""

from __future__ import annotations

import pytest

from qsmodels.arena import HEALTH, load_map, weapon
from qsmodels.atoms import AnswerSet, parse_atom
from qsmodels.perception import Fluent, FluentSnapshot
from qsmodels.planning import (
    EncodeError,
    ItemFact,
    MalformedAnswerSet,
    Plan,
    PlannedAction,
    PlanningProblem,
    decode_plan,
    decode_preemption,
    decode_trajectory,
    encode,
    replay_plan,
)
from qsmodels.solvers import Sat, Unsat, solve_oracle
from conftest import T1_MAP


def snapshot(*fluents: Fluent) -> FluentSnapshot:
    return FluentSnapshot(0, frozenset(fluents))


def t1_low_health_problem(horizon: int = 3) -> PlanningProblem:
    bundle = load_map(T1_MAP)
    return PlanningProblem(
        snapshot=snapshot(
            Fluent("at", ("w0",)),
            Fluent("health_level", ("low",)),
            Fluent("armed", ("1",)),
            Fluent("ammo_ok"),
            Fluent("item_available", ("h1", "w1", "health")),
            Fluent("enemy_expected", ("w2",)),
        ),
        graph=bundle.graph,
        items=(ItemFact("h1", "w1", HEALTH),),
        horizon=horizon,
    )


def answer_of(problem: PlanningProblem) -> AnswerSet:
    result = solve_oracle(problem)
    assert isinstance(result, Sat)
    return result.answer


class TestEncoder:
    def test_emits_initial_facts_and_goal(self):
        text = encode(t1_low_health_problem())
        assert "holds(at(w0),0)." in text
        assert "holds(item_available(h1,w1,health),0)." in text
        assert ":- not occurs(attack,2)." in text
        assert text.count(":- not occurs(attack,") == 1  # exactly one goal constraint

    def test_contract_vocabulary_present(self):
        text = encode(t1_low_health_problem())
        for needle in ("time(0).", "waypoint(w0).", "edge(w0,w1).", "item(h1,w1,health)."):
            assert needle in text
        assert "react(T,behind_enemy,attack) :- step(T)." in text

    def test_byte_identical_for_identical_problems(self):
        assert encode(t1_low_health_problem()) == encode(t1_low_health_problem())

    def test_unknown_waypoint_rejected(self):
        bundle = load_map(T1_MAP)
        problem = PlanningProblem(
            snapshot=snapshot(
                Fluent("at", ("w9",)),
                Fluent("health_level", ("high",)),
                Fluent("armed", ("1",)),
            ),
            graph=bundle.graph,
            items=(),
            horizon=2,
        )
        with pytest.raises(EncodeError):
            encode(problem)

    def test_unknown_item_rejected(self):
        problem = t1_low_health_problem()
        bad = PlanningProblem(
            snapshot=snapshot(
                Fluent("at", ("w0",)),
                Fluent("health_level", ("high",)),
                Fluent("armed", ("1",)),
                Fluent("item_available", ("zz", "w1", "health")),
            ),
            graph=problem.graph,
            items=problem.items,
            horizon=2,
        )
        with pytest.raises(EncodeError):
            encode(bad)

    def test_horizon_zero_rejected_upstream(self):
        with pytest.raises(ValueError):
            t1_low_health_problem(horizon=0)


class TestOracle:
    def test_t1_horizon3_plan_frozen(self):
        plan = decode_plan(answer_of(t1_low_health_problem(3)))
        assert [a.render() for a in plan.steps] == [
            "move_towards(w1)",
            "pick_health(h1)",
            "attack",
        ]

    def test_t1_short_horizons_unsat(self):
        for horizon in (1, 2):
            assert isinstance(solve_oracle(t1_low_health_problem(horizon)), Unsat)

    def test_attack_immediately_at_horizon_one(self):
        bundle = load_map(T1_MAP)
        problem = PlanningProblem(
            snapshot=snapshot(
                Fluent("at", ("w1",)),
                Fluent("health_level", ("high",)),
                Fluent("armed", ("1",)),
                Fluent("ammo_ok"),
                Fluent("enemy_expected", ("w2",)),
            ),
            graph=bundle.graph,
            items=(),
            horizon=1,
        )
        plan = decode_plan(answer_of(problem))
        assert [a.render() for a in plan.steps] == ["attack"]

    def test_no_enemy_unsat_at_any_horizon(self):
        bundle = load_map(T1_MAP)
        for horizon in range(1, 6):
            problem = PlanningProblem(
                snapshot=snapshot(
                    Fluent("at", ("w0",)),
                    Fluent("health_level", ("high",)),
                    Fluent("armed", ("1",)),
                    Fluent("ammo_ok"),
                ),
                graph=bundle.graph,
                items=(),
                horizon=horizon,
            )
            assert isinstance(solve_oracle(problem), Unsat)

    def test_weapon_pickup_raises_tier(self):
        bundle = load_map(T1_MAP)
        problem = PlanningProblem(
            snapshot=snapshot(
                Fluent("at", ("w0",)),
                Fluent("health_level", ("high",)),
                Fluent("armed", ("1",)),
                Fluent("ammo_ok"),
                Fluent("item_available", ("g1", "w1", "weapon(2)")),
                Fluent("enemy_expected", ("w2",)),
            ),
            graph=bundle.graph,
            items=(ItemFact("g1", "w1", weapon(2)),),
            horizon=3,
            enemy_tier_estimate=2,
        )
        plan = decode_plan(answer_of(problem))
        assert [a.render() for a in plan.steps] == [
            "move_towards(w1)",
            "pick_ammo(g1)",
            "attack",
        ]
        trajectory = decode_trajectory(answer_of(problem), 3)
        assert Fluent("armed", ("2",)) in trajectory[3]
        assert not any(f.name == "item_available" for f in trajectory[3])

    def test_replay_soundness_of_oracle_plans(self):
        problem = t1_low_health_problem(3)
        plan = decode_plan(answer_of(problem))
        assert replay_plan(problem, plan.steps)
        # And a corrupted plan fails the same check.
        assert not replay_plan(problem, (PlannedAction("attack"),))


class TestReactionTable:
    def test_policy_on_t1_frozen(self):
        answer = answer_of(t1_low_health_problem(3))
        table = decode_preemption(answer, 3)
        assert len(table.entries) == 9
        # trajectory health: low@0, low@1 (pick happens at 1), medium@2
        assert table.action_for(0, "under_attack").render() == "elude(w1)"
        assert table.action_for(1, "under_attack").render() == "elude(w0)"
        assert table.action_for(2, "under_attack").render() == "attack"
        # facing_enemy needs armed >= estimate and health >= medium
        assert table.action_for(0, "facing_enemy").render() == "elude(w1)"
        assert table.action_for(2, "facing_enemy").render() == "attack"
        for t in range(3):
            assert table.action_for(t, "behind_enemy").render() == "attack"


class TestDecoder:
    def test_single_attack_plan(self):
        answer = AnswerSet(frozenset({parse_atom("occurs(attack,0)")}))
        plan = decode_plan(answer)
        assert plan == Plan((PlannedAction("attack"),))

    def test_gap_is_malformed(self):
        answer = AnswerSet(
            frozenset({parse_atom("occurs(attack,0)"), parse_atom("occurs(attack,2)")})
        )
        with pytest.raises(MalformedAnswerSet):
            decode_plan(answer)

    def test_non_attack_final_is_malformed(self):
        answer = AnswerSet(
            frozenset(
                {parse_atom("occurs(attack,0)"), parse_atom("occurs(move_towards(w1),1)")}
            )
        )
        with pytest.raises(MalformedAnswerSet):
            decode_plan(answer)

    def test_preemption_totality(self):
        atoms = set()
        for t in range(2):
            for e in ("under_attack", "facing_enemy", "behind_enemy"):
                atoms.add(parse_atom(f"react({t},{e},attack)"))
        table = decode_preemption(AnswerSet(frozenset(atoms)), 2)
        assert len(table.entries) == 6

    def test_missing_cell_is_malformed(self):
        atoms = set()
        for t in range(2):
            for e in ("under_attack", "facing_enemy", "behind_enemy"):
                if (t, e) == (1, "behind_enemy"):
                    continue
                atoms.add(parse_atom(f"react({t},{e},attack)"))
        with pytest.raises(MalformedAnswerSet):
            decode_preemption(AnswerSet(frozenset(atoms)), 2)

    def test_conflicting_cell_is_malformed(self):
        atoms = {
            parse_atom("react(0,under_attack,attack)"),
            parse_atom("react(0,under_attack,elude(w0))"),
        }
        with pytest.raises(MalformedAnswerSet):
            decode_preemption(AnswerSet(frozenset(atoms)), 1)
