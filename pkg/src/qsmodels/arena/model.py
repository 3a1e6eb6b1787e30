"""Core world-state types for the grid arena."""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property

Cell = tuple[int, int]

DIRECTIONS: tuple[str, ...] = ("N", "E", "S", "W")

DELTA: dict[str, Cell] = {"N": (0, -1), "E": (1, 0), "S": (0, 1), "W": (-1, 0)}

OPPOSITE: dict[str, str] = {"N": "S", "S": "N", "E": "W", "W": "E"}


@dataclass(frozen=True)
class Command:
    """One-tick agent input: move, fire, turn, or idle."""

    kind: str  # "move" | "fire" | "turn" | "idle"
    direction: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("move", "fire", "turn", "idle"):
            raise ValueError(f"unknown command kind {self.kind!r}")
        if self.kind in ("move", "turn") and self.direction not in DIRECTIONS:
            raise ValueError(f"{self.kind} requires a direction in {DIRECTIONS}")


def move_step(direction: str) -> Command:
    return Command("move", direction)


def turn(direction: str) -> Command:
    return Command("turn", direction)


FIRE = Command("fire")
IDLE = Command("idle")


@dataclass(frozen=True)
class GridMap:
    """Rectangular cell grid; '#' is wall, '.' is floor. Border must be wall."""

    width: int
    height: int
    rows: tuple[str, ...]

    def in_bounds(self, cell: Cell) -> bool:
        x, y = cell
        return 0 <= x < self.width and 0 <= y < self.height

    def is_floor(self, cell: Cell) -> bool:
        x, y = cell
        return self.in_bounds(cell) and self.rows[y][x] == "."

    def is_wall(self, cell: Cell) -> bool:
        return not self.is_floor(cell)

    def floor_cells(self) -> list[Cell]:
        return [
            (x, y)
            for y in range(self.height)
            for x in range(self.width)
            if self.rows[y][x] == "."
        ]


@dataclass(frozen=True)
class WaypointGraph:
    """Symbolic waypoints overlaid on the grid, with an undirected edge set."""

    waypoints: tuple[tuple[str, Cell], ...]  # sorted by id
    edges: frozenset[tuple[str, str]]  # normalized (min, max) pairs

    @cached_property
    def _cells(self) -> dict[str, Cell]:
        return dict(self.waypoints)

    @cached_property
    def _adjacency(self) -> dict[str, tuple[str, ...]]:
        adj: dict[str, list[str]] = {wid: [] for wid, _ in self.waypoints}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return {wid: tuple(sorted(ns)) for wid, ns in adj.items()}

    def ids(self) -> tuple[str, ...]:
        return tuple(wid for wid, _ in self.waypoints)

    def has(self, wid: str) -> bool:
        return wid in self._cells

    def cell_of(self, wid: str) -> Cell:
        return self._cells[wid]

    def neighbors(self, wid: str) -> tuple[str, ...]:
        return self._adjacency[wid]

    def distances_from(self, wid: str) -> dict[str, int]:
        """Hop counts over the waypoint graph (BFS); unreachable ids absent."""
        dist = {wid: 0}
        frontier = [wid]
        while frontier:
            nxt: list[str] = []
            for cur in frontier:
                for nb in self._adjacency[cur]:
                    if nb not in dist:
                        dist[nb] = dist[cur] + 1
                        nxt.append(nb)
            frontier = nxt
        return dist

    def is_connected(self) -> bool:
        if not self.waypoints:
            return False
        return len(self.distances_from(self.waypoints[0][0])) == len(self.waypoints)


@dataclass(frozen=True)
class ItemKind:
    """health, ammo, or weapon(tier) with tier 1..3."""

    name: str
    tier: int = 0

    def render(self) -> str:
        if self.name == "weapon":
            return f"weapon({self.tier})"
        return self.name


HEALTH = ItemKind("health")
AMMO = ItemKind("ammo")


def weapon(tier: int) -> ItemKind:
    if tier not in (1, 2, 3):
        raise ValueError(f"weapon tier must be 1..3, got {tier}")
    return ItemKind("weapon", tier)


@dataclass(frozen=True)
class Item:
    item_id: str
    kind: ItemKind
    waypoint: str
    available: bool = True
    respawn_remaining: int = 0


@dataclass(frozen=True)
class AgentState:
    role: str  # "bot" | "enemy"
    cell: Cell
    facing: str
    health: int = 100
    armed_tier: int = 1
    ammo_ok: bool = True

    @property
    def alive(self) -> bool:
        return self.health > 0


@dataclass(frozen=True)
class WorldState:
    """Full simulator truth. Immutable: step() returns a new value."""

    tick: int
    grid: GridMap
    graph: WaypointGraph
    items: tuple[Item, ...]
    bot: AgentState
    enemy: AgentState
    rng_state: int  # match seed, recorded for trace identity

    def item(self, item_id: str) -> Item:
        for it in self.items:
            if it.item_id == item_id:
                return it
        raise KeyError(item_id)

    def with_changes(self, **kwargs) -> WorldState:
        return replace(self, **kwargs)
