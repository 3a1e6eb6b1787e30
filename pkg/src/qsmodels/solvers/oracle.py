"""Brute-force forward-search planner over the shared action semantics.

Independent of the logic-program route: the encoder states the semantics
declaratively, this module searches them procedurally, and both emit the
same atom vocabulary so decoding is exercised identically.
"""

from __future__ import annotations

from ..perception import Fluent
from ..planning.problem import PlannedAction, PlanningProblem
from ..planning.semantics import (
    Context,
    PlanState,
    apply_action,
    build_context,
    executable,
    initial_state,
    reaction_policy,
    state_fluents,
    validate_problem,
)
from ..atoms import AnswerSet, GroundAtom, Term, parse_atom
from .result import Sat, SolveResult, Unsat


def _term_of(rendered: str) -> Term:
    atom = parse_atom(rendered)
    return Term(atom.predicate, atom.args)


def _has_available(ctx: Context, state: PlanState, kinds: tuple[str, ...]) -> bool:
    return any(ctx.items[iid].kind.name in kinds for iid in state.available)


def _min_steps_to_attack_pos(ctx: Context, state: PlanState) -> int:
    dist = ctx.dist_from_enemy.get(state.at)
    if dist is None:
        return 10**9  # disconnected from the enemy: unreachable
    return max(0, dist - 1)  # attack positions are the enemy waypoint and its neighbors


def _prune(ctx: Context, state: PlanState, steps_left: int) -> bool:
    """Sound cutoffs: each remaining step moves at most one edge, and the
    final step must be an executable attack."""
    if _min_steps_to_attack_pos(ctx, state) > steps_left - 1:
        return True
    if state.health == "low" and not _has_available(ctx, state, ("health",)):
        return True
    if not state.ammo_ok and not _has_available(ctx, state, ("ammo", "weapon")):
        return True
    max_tier = state.armed
    for iid in state.available:
        kind = ctx.items[iid].kind
        if kind.name == "weapon":
            max_tier = max(max_tier, kind.tier)
    return max_tier < ctx.required_tier()


def _search(
    ctx: Context,
    state: PlanState,
    t: int,
    horizon: int,
    failed: set[tuple[PlanState, int]],
) -> list[PlannedAction] | None:
    """First plan in the fixed expansion order, depth-first."""
    if (state, t) in failed:
        return None
    steps_left = horizon - t
    if _prune(ctx, state, steps_left):
        failed.add((state, t))
        return None
    attack = ctx.actions[0]
    if steps_left == 1:
        if executable(attack, state, ctx):
            return [attack]
        failed.add((state, t))
        return None
    for action in ctx.actions:
        if not executable(action, state, ctx):
            continue
        rest = _search(ctx, apply_action(action, state, ctx), t + 1, horizon, failed)
        if rest is not None:
            return [action] + rest
    failed.add((state, t))
    return None


def _render_answer(
    ctx: Context, plan: list[PlannedAction], trajectory: list[PlanState]
) -> AnswerSet:
    atoms: set[GroundAtom] = set()
    problem = ctx.problem
    for t in range(problem.horizon + 1):
        atoms.add(GroundAtom("time", (Term(str(t)),)))
    for wid in problem.graph.ids():
        atoms.add(GroundAtom("waypoint", (Term(wid),)))
    for a, b in problem.graph.edges:
        atoms.add(GroundAtom("edge", (Term(a), Term(b))))
        atoms.add(GroundAtom("edge", (Term(b), Term(a))))
    for fact in problem.items:
        atoms.add(
            GroundAtom("item", (Term(fact.item_id), Term(fact.waypoint), _term_of(fact.kind.render())))
        )
    for t, action in enumerate(plan):
        atoms.add(GroundAtom("occurs", (_term_of(action.render()), Term(str(t)))))
    for t, state in enumerate(trajectory):
        for fluent in state_fluents(state, ctx):
            atoms.add(GroundAtom("holds", (_term_of(fluent.render()), Term(str(t)))))
    for t in range(problem.horizon):
        for emergency, action in reaction_policy(trajectory[t], ctx).items():
            atoms.add(
                GroundAtom(
                    "react", (Term(str(t)), Term(emergency), _term_of(action.render()))
                )
            )
    return AnswerSet(frozenset(atoms))


def solve_oracle(problem: PlanningProblem) -> SolveResult:
    """Deterministic DFS for the first horizon-length plan ending in attack.

    Sat answers carry occurs/2, the full holds/2 trajectory, react/3 for
    every (step, emergency), and the static domain atoms.
    """
    validate_problem(problem)
    ctx = build_context(problem)
    if ctx.enemy_wp is None:
        return Unsat()  # attack is never executable without an expected enemy
    state = initial_state(problem)
    plan = _search(ctx, state, 0, problem.horizon, set())
    if plan is None:
        return Unsat()
    trajectory = [state]
    for action in plan:
        trajectory.append(apply_action(action, trajectory[-1], ctx))
    return Sat(_render_answer(ctx, plan, trajectory))


def oracle_trajectory_fluents(
    problem: PlanningProblem, states: list[PlanState]
) -> list[frozenset[Fluent]]:
    ctx = build_context(problem)
    return [state_fluents(s, ctx) for s in states]
