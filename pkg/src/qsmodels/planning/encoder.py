"""Emission of the bounded-horizon planning program.

The emitted text is grounder-ready for both lparse-class and gringo-class
tools: every rule variable is bound by a domain predicate, arithmetic is
replaced by explicit next/2 and lt/2 facts, and each statement sits on its
own '.'-terminated line. Emission is a pure function of the problem
(byte-identical output for identical problems).

Contract vocabulary: time/1, holds/2, occurs/2, react/3, edge/2,
waypoint/1, item/3. Everything else is internal scaffolding for the
grounder.
"""

from __future__ import annotations

from .problem import PlanningProblem
from .semantics import best_flee, build_context, validate_problem

_LEVELS = ("low", "medium", "high")
_TIERS = (0, 1, 2, 3)


def encode(problem: PlanningProblem) -> str:
    """Domain rules + snapshot facts + goal + pre-emption generators."""
    validate_problem(problem)
    ctx = build_context(problem)
    n = problem.horizon
    graph = problem.graph
    out: list[str] = []
    add = out.append

    add(f"% duel planning program, horizon {n}")
    add("% time scaffold")
    for t in range(n + 1):
        add(f"time({t}).")
    for t in range(n):
        add(f"step({t}).")
        add(f"next({t},{t + 1}).")

    add("% arena")
    for wid in graph.ids():
        add(f"waypoint({wid}).")
    for a, b in sorted(graph.edges):
        add(f"edge({a},{b}).")
        add(f"edge({b},{a}).")
    for fact in sorted(problem.items, key=lambda f: f.item_id):
        add(f"item({fact.item_id},{fact.waypoint},{fact.kind.render()}).")

    add("% scales")
    for level in _LEVELS:
        add(f"level({level}).")
    add("levelup(low,medium).")
    add("levelup(medium,high).")
    add("levelup(high,high).")
    for tier in _TIERS:
        add(f"tier({tier}).")
    for a in _TIERS:
        for b in _TIERS:
            if a < b:
                add(f"lt({a},{b}).")
    add("ammoish(ammo).")
    for tier in (1, 2, 3):
        add(f"ammoish(weapon({tier})).")

    add("% geometry against the expected enemy position")
    if ctx.enemy_wp is not None:
        positions = sorted({ctx.enemy_wp, *graph.neighbors(ctx.enemy_wp)})
        for wid in positions:
            add(f"attack_pos({wid}).")
        dist = ctx.dist_from_enemy
        for a, b in sorted(graph.edges):
            for v, w in ((a, b), (b, a)):
                if dist.get(w, -1) > dist.get(v, -1):
                    add(f"elude_ok({v},{w}).")
    for wid in graph.ids():
        add(f"best_flee({wid},{best_flee(wid, ctx)}).")
    for tier in _TIERS:
        if tier >= ctx.required_tier():
            add(f"armed_ge_goal({tier}).")
        if tier >= problem.enemy_tier_estimate:
            add(f"armed_ge_est({tier}).")

    add("% fluent domain")
    add("fluent(at(W)) :- waypoint(W).")
    add("fluent(health_level(L)) :- level(L).")
    add("fluent(armed(A)) :- tier(A).")
    add("fluent(ammo_ok).")
    add("fluent(item_available(I,W,K)) :- item(I,W,K).")
    add("fluent(enemy_last_seen(W)) :- waypoint(W).")
    add("fluent(enemy_expected(W)) :- waypoint(W).")

    add("% initial state")
    for f in sorted(problem.snapshot.fluents, key=lambda f: (f.name, f.args)):
        add(f"holds({f.render()},0).")

    add("% action domain")
    add("action(attack).")
    add("action(move_towards(W)) :- waypoint(W).")
    add("action(elude(W)) :- waypoint(W).")
    add("action(pick_health(I)) :- item(I,W,health).")
    add("action(pick_ammo(I)) :- item(I,W,K), ammoish(K).")

    add("% exactly one action per step")
    add("1 { occurs(A,T) : action(A) } 1 :- step(T).")

    add("% executability")
    add(
        ":- step(T), waypoint(V), waypoint(W), occurs(move_towards(W),T), "
        "holds(at(V),T), not edge(V,W)."
    )
    add(
        ":- step(T), waypoint(V), waypoint(W), occurs(elude(W),T), "
        "holds(at(V),T), not elude_ok(V,W)."
    )
    add("pick_ok(I,T) :- step(T), item(I,W,K), holds(at(W),T), holds(item_available(I,W,K),T).")
    add(":- step(T), item(I,W,health), occurs(pick_health(I),T), not pick_ok(I,T).")
    add(":- step(T), item(I,W,K), ammoish(K), occurs(pick_ammo(I),T), not pick_ok(I,T).")
    add("attack_pos_ok(T) :- step(T), waypoint(V), attack_pos(V), holds(at(V),T).")
    add("armed_goal_ok(T) :- step(T), tier(A), armed_ge_goal(A), holds(armed(A),T).")
    add(":- step(T), occurs(attack,T), not attack_pos_ok(T).")
    add(":- step(T), occurs(attack,T), holds(health_level(low),T).")
    add(":- step(T), occurs(attack,T), not armed_goal_ok(T).")
    add(":- step(T), occurs(attack,T), not holds(ammo_ok,T).")

    add("% effects")
    add("holds(at(W),T1) :- step(T), next(T,T1), waypoint(W), occurs(move_towards(W),T).")
    add("holds(at(W),T1) :- step(T), next(T,T1), waypoint(W), occurs(elude(W),T).")
    add("moved(T) :- step(T), waypoint(W), occurs(move_towards(W),T).")
    add("moved(T) :- step(T), waypoint(W), occurs(elude(W),T).")
    add("ab(at(V),T) :- step(T), waypoint(V), moved(T), holds(at(V),T).")
    add(
        "holds(health_level(M),T1) :- step(T), next(T,T1), item(I,W,health), "
        "occurs(pick_health(I),T), level(L), level(M), levelup(L,M), holds(health_level(L),T)."
    )
    add(
        "ab(health_level(L),T) :- step(T), item(I,W,health), occurs(pick_health(I),T), "
        "level(L), holds(health_level(L),T)."
    )
    add("ab(item_available(I,W,K),T) :- step(T), item(I,W,K), occurs(pick_health(I),T).")
    add("ab(item_available(I,W,K),T) :- step(T), item(I,W,K), occurs(pick_ammo(I),T).")
    add(
        "holds(ammo_ok,T1) :- step(T), next(T,T1), item(I,W,K), ammoish(K), "
        "occurs(pick_ammo(I),T)."
    )
    add(
        "holds(armed(X),T1) :- step(T), next(T,T1), item(I,W,weapon(X)), "
        "occurs(pick_ammo(I),T), tier(A), lt(A,X), holds(armed(A),T)."
    )
    add(
        "ab(armed(A),T) :- step(T), item(I,W,weapon(X)), occurs(pick_ammo(I),T), "
        "tier(A), lt(A,X), holds(armed(A),T)."
    )

    add("% frame: unaffected fluents persist")
    add("holds(F,T1) :- step(T), next(T,T1), fluent(F), holds(F,T), not ab(F,T).")

    add("% goal")
    add(f":- not occurs(attack,{n - 1}).")

    add("% pre-emption generators")
    add("react(T,behind_enemy,attack) :- step(T).")
    add("react(T,under_attack,attack) :- step(T), not holds(health_level(low),T).")
    add(
        "react(T,under_attack,elude(W)) :- step(T), waypoint(V), waypoint(W), "
        "holds(health_level(low),T), holds(at(V),T), best_flee(V,W)."
    )
    add(
        "fe_fit(T) :- step(T), tier(A), armed_ge_est(A), holds(armed(A),T), "
        "not holds(health_level(low),T)."
    )
    add("react(T,facing_enemy,attack) :- step(T), fe_fit(T).")
    add(
        "react(T,facing_enemy,elude(W)) :- step(T), waypoint(V), waypoint(W), "
        "holds(at(V),T), best_flee(V,W), not fe_fit(T)."
    )

    return "\n".join(out) + "\n"
