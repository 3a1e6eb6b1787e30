"""Extraction of plans, pre-emption tables, and trajectories from answer sets."""

from __future__ import annotations

from ..perception import Fluent
from ..atoms import AnswerSet, GroundAtom, Term
from .problem import EMERGENCIES, Plan, PlannedAction, PreemptionTable


class MalformedAnswerSet(Exception):
    """Encoder/solver mismatch; never silently repaired."""


def _as_int(term: Term, what: str) -> int:
    try:
        return int(term.name)
    except ValueError:
        raise MalformedAnswerSet(f"{what} has non-integer timestep {term.render()!r}")


def _as_action(term: Term) -> PlannedAction:
    try:
        return PlannedAction(term.name, tuple(a.render() for a in term.args))
    except ValueError as exc:
        raise MalformedAnswerSet(f"bad action term {term.render()!r}: {exc}")


def decode_plan(answer: AnswerSet) -> Plan:
    """occurs/2 atoms sorted by timestep; verifies contiguity and attack-last."""
    occurs = answer.with_predicate("occurs")
    if not occurs:
        raise MalformedAnswerSet("answer set contains no occurs/2 atoms")
    by_step: dict[int, PlannedAction] = {}
    for atom in occurs:
        if len(atom.args) != 2:
            raise MalformedAnswerSet(f"occurs arity != 2: {atom.render()}")
        t = _as_int(atom.args[1], "occurs")
        action = _as_action(atom.args[0])
        if t in by_step and by_step[t] != action:
            raise MalformedAnswerSet(f"two actions at step {t}")
        by_step[t] = action
    steps = sorted(by_step)
    if steps != list(range(len(steps))):
        raise MalformedAnswerSet(f"timesteps not contiguous from 0: {steps}")
    plan = Plan(steps=tuple(by_step[t] for t in steps))
    try:
        plan.validate()
    except ValueError as exc:
        raise MalformedAnswerSet(str(exc))
    return plan


def decode_preemption(
    answer: AnswerSet,
    horizon: int,
    emergencies: tuple[str, ...] = EMERGENCIES,
) -> PreemptionTable:
    """react/3 atoms as a table that must be total over steps x emergencies."""
    entries: dict[tuple[int, str], PlannedAction] = {}
    for atom in answer.with_predicate("react"):
        if len(atom.args) != 3:
            raise MalformedAnswerSet(f"react arity != 3: {atom.render()}")
        t = _as_int(atom.args[0], "react")
        emergency = atom.args[1].render()
        action = _as_action(atom.args[2])
        key = (t, emergency)
        if key in entries and entries[key] != action:
            raise MalformedAnswerSet(
                f"conflicting reactions at {key}: {entries[key].render()} vs {action.render()}"
            )
        entries[key] = action
    entries = {
        k: v for k, v in entries.items() if 0 <= k[0] < horizon and k[1] in emergencies
    }
    table = PreemptionTable(entries=entries)
    try:
        table.validate(horizon, emergencies)
    except ValueError as exc:
        raise MalformedAnswerSet(str(exc))
    return table


def _fluent_of(term: Term) -> Fluent:
    return Fluent(term.name, tuple(a.render() for a in term.args))


def decode_trajectory(answer: AnswerSet, horizon: int) -> tuple[frozenset[Fluent], ...]:
    """holds/2 grouped by time, for states 0..horizon."""
    per_step: list[set[Fluent]] = [set() for _ in range(horizon + 1)]
    for atom in answer.with_predicate("holds"):
        if len(atom.args) != 2:
            raise MalformedAnswerSet(f"holds arity != 2: {atom.render()}")
        t = _as_int(atom.args[1], "holds")
        if 0 <= t <= horizon:
            per_step[t].add(_fluent_of(atom.args[0]))
    return tuple(frozenset(s) for s in per_step)


def render_atom(predicate: str, *args: str) -> GroundAtom:
    """Convenience for tests/fixtures: build an atom from rendered pieces."""
    from ..atoms import parse_atom

    if args:
        return parse_atom(f"{predicate}({','.join(args)})")
    return parse_atom(predicate)
