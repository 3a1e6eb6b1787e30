"""Deterministic desk-scale instance family for backend cross-checks.

Graph shapes (path, cycle, star) up to 8 waypoints with up to 4 items,
crossed with health/ammo/tier-estimate variations. Used by the solver
agreement tests and the acceptance suite at horizons 1..5.
"""

from __future__ import annotations

from itertools import product

from qsmodels.arena import AMMO, HEALTH, WaypointGraph, weapon
from qsmodels.perception import Fluent, FluentSnapshot
from qsmodels.planning import ItemFact, PlanningProblem

HORIZONS = (1, 2, 3, 4, 5)

_SHAPES = (
    ("path", 2),
    ("path", 3),
    ("path", 5),
    ("path", 8),
    ("cycle", 4),
    ("cycle", 6),
    ("star", 4),
    ("star", 8),
)

_KINDS = {"health": HEALTH, "ammo": AMMO, "weapon2": weapon(2)}

_ITEM_SETS = (
    (),
    ("health",),
    ("weapon2",),
    ("health", "weapon2"),
    ("health", "ammo", "weapon2", "health"),
)


def build_graph(shape: str, n: int) -> WaypointGraph:
    ids = [f"w{i}" for i in range(n)]
    cells = tuple((wid, (i + 1, 1)) for i, wid in enumerate(ids))
    if shape == "path":
        edges = {(ids[i], ids[i + 1]) for i in range(n - 1)}
    elif shape == "cycle":
        edges = {(ids[i], ids[(i + 1) % n]) for i in range(n)}
    else:  # star centered on w0
        edges = {(ids[0], ids[i]) for i in range(1, n)}
    normalized = frozenset((min(a, b), max(a, b)) for a, b in edges)
    return WaypointGraph(waypoints=cells, edges=normalized)


def _items_for(names: tuple[str, ...], n_waypoints: int) -> tuple[ItemFact, ...]:
    facts = []
    for i, name in enumerate(names):
        wp = f"w{(i + 1) % n_waypoints}"  # spread over interior waypoints
        facts.append(ItemFact(f"i{i}", wp, _KINDS[name]))
    return tuple(facts)


def instance_family() -> list[PlanningProblem]:
    problems = []
    for (shape, n), item_names, health, ammo_ok, estimate in product(
        _SHAPES, _ITEM_SETS, ("low", "medium"), (True, False), (1, 2)
    ):
        graph = build_graph(shape, n)
        items = _items_for(item_names, n)
        fluents = {
            Fluent("at", ("w0",)),
            Fluent("health_level", (health,)),
            Fluent("armed", ("1",)),
            Fluent("enemy_expected", (f"w{n - 1}",)),
        }
        if ammo_ok:
            fluents.add(Fluent("ammo_ok"))
        for fact in items:
            fluents.add(
                Fluent("item_available", (fact.item_id, fact.waypoint, fact.kind.render()))
            )
        problems.append(
            PlanningProblem(
                snapshot=FluentSnapshot(0, frozenset(fluents)),
                graph=graph,
                items=items,
                horizon=1,
                enemy_tier_estimate=estimate,
            )
        )
    return problems
