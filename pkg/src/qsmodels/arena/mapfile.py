"""Map file parsing and validation.

Format (UTF-8 text, sections in this order, `;`-separated entries,
blank lines ignored):

    #####
    #...#
    #####
    waypoints: w0 1 1 ; w1 2 1
    edges: w0 w1
    items: h1 health w1
    spawn: bot w0 ; enemy w1
"""

from __future__ import annotations

from dataclasses import dataclass

from .geometry import grid_distances
from .model import AMMO, HEALTH, Cell, GridMap, Item, ItemKind, WaypointGraph, weapon


class MapParseError(Exception):
    def __init__(self, line: int, column: int, reason: str) -> None:
        super().__init__(f"line {line}, column {column}: {reason}")
        self.line = line
        self.column = column
        self.reason = reason


class MapInvalidError(Exception):
    """Structural invariant failure on an otherwise well-formed map."""


@dataclass(frozen=True)
class MapBundle:
    grid: GridMap
    graph: WaypointGraph
    items: tuple[Item, ...]
    bot_spawn: Cell
    enemy_spawn: Cell


_KINDS: dict[str, ItemKind] = {
    "health": HEALTH,
    "ammo": AMMO,
    "weapon1": weapon(1),
    "weapon2": weapon(2),
    "weapon3": weapon(3),
}


def _entries(line_no: int, body: str) -> list[tuple[int, list[str]]]:
    out = []
    col = 1
    for chunk in body.split(";"):
        fields = chunk.split()
        if fields:
            out.append((col + len(chunk) - len(chunk.lstrip()), fields))
        col += len(chunk) + 1
    return out


def load_map(text: str) -> MapBundle:
    """Parse map text into validated arena structures.

    Raises MapParseError for format/reference/placement violations (with the
    offending position) and MapInvalidError for whole-map invariant failures
    (border, connectivity).
    """
    lines = text.splitlines()
    grid_rows: list[str] = []
    sections: dict[str, tuple[int, str]] = {}
    section_order: list[str] = []
    in_grid = True
    for idx, raw in enumerate(lines, start=1):
        line = raw.rstrip()
        if not line.strip():
            continue
        head, _, body = line.partition(":")
        key = head.strip().lower()
        if key in ("waypoints", "edges", "items", "spawn") and _ == ":":
            in_grid = False
            if key in sections:
                raise MapParseError(idx, 1, f"duplicate section {key!r}")
            sections[key] = (idx, body)
            section_order.append(key)
            continue
        if not in_grid:
            raise MapParseError(idx, 1, f"unexpected content after sections: {line!r}")
        for col, ch in enumerate(line, start=1):
            if ch not in "#.":
                raise MapParseError(idx, col, f"grid cell must be '#' or '.', got {ch!r}")
        grid_rows.append(line)

    if not grid_rows:
        raise MapParseError(1, 1, "missing grid section")
    expected = ["waypoints", "edges", "items", "spawn"]
    if section_order != expected:
        raise MapParseError(
            len(lines), 1, f"sections must appear in order {expected}, got {section_order}"
        )

    width = len(grid_rows[0])
    for y, row in enumerate(grid_rows):
        if len(row) != width:
            raise MapParseError(y + 1, len(row) + 1, "ragged grid row")
    grid = GridMap(width=width, height=len(grid_rows), rows=tuple(grid_rows))

    # waypoints: id x y
    wp_line, wp_body = sections["waypoints"]
    waypoints: dict[str, Cell] = {}
    for col, fields in _entries(wp_line, wp_body):
        if len(fields) != 3:
            raise MapParseError(wp_line, col, f"waypoint entry needs 'id x y', got {fields}")
        wid, xs, ys = fields
        if wid in waypoints:
            raise MapParseError(wp_line, col, f"duplicate waypoint id {wid!r}")
        try:
            cell = (int(xs), int(ys))
        except ValueError:
            raise MapParseError(wp_line, col, f"non-integer waypoint coordinate in {fields}")
        if not grid.is_floor(cell):
            raise MapParseError(wp_line, col, f"waypoint {wid!r} at {cell} is not on floor")
        waypoints[wid] = cell

    edge_line, edge_body = sections["edges"]
    edges: set[tuple[str, str]] = set()
    for col, fields in _entries(edge_line, edge_body):
        if len(fields) != 2:
            raise MapParseError(edge_line, col, f"edge entry needs two waypoint ids, got {fields}")
        a, b = fields
        for wid in (a, b):
            if wid not in waypoints:
                raise MapParseError(edge_line, col, f"edge references unknown waypoint {wid!r}")
        if a == b:
            raise MapParseError(edge_line, col, f"self-edge on {a!r}")
        edges.add((min(a, b), max(a, b)))

    graph = WaypointGraph(
        waypoints=tuple(sorted(waypoints.items())), edges=frozenset(edges)
    )

    item_line, item_body = sections["items"]
    items: list[Item] = []
    seen_items: set[str] = set()
    for col, fields in _entries(item_line, item_body):
        if len(fields) != 3:
            raise MapParseError(item_line, col, f"item entry needs 'id kind waypoint', got {fields}")
        iid, kind_s, wid = fields
        if iid in seen_items:
            raise MapParseError(item_line, col, f"duplicate item id {iid!r}")
        if kind_s not in _KINDS:
            raise MapParseError(
                item_line, col, f"unknown item kind {kind_s!r} (expected {sorted(_KINDS)})"
            )
        if wid not in waypoints:
            raise MapParseError(item_line, col, f"item {iid!r} placed at unknown waypoint {wid!r}")
        seen_items.add(iid)
        items.append(Item(item_id=iid, kind=_KINDS[kind_s], waypoint=wid))

    spawn_line, spawn_body = sections["spawn"]
    spawns: dict[str, Cell] = {}
    for col, fields in _entries(spawn_line, spawn_body):
        if len(fields) != 2:
            raise MapParseError(spawn_line, col, f"spawn entry needs 'role waypoint', got {fields}")
        role, wid = fields
        if role not in ("bot", "enemy"):
            raise MapParseError(spawn_line, col, f"spawn role must be bot or enemy, got {role!r}")
        if wid not in waypoints:
            raise MapParseError(spawn_line, col, f"spawn references unknown waypoint {wid!r}")
        if role in spawns:
            raise MapParseError(spawn_line, col, f"duplicate spawn for {role!r}")
        spawns[role] = waypoints[wid]
    for role in ("bot", "enemy"):
        if role not in spawns:
            raise MapParseError(spawn_line, 1, f"missing spawn for {role!r}")

    _validate(grid, graph)
    return MapBundle(
        grid=grid,
        graph=graph,
        items=tuple(items),
        bot_spawn=spawns["bot"],
        enemy_spawn=spawns["enemy"],
    )


def _validate(grid: GridMap, graph: WaypointGraph) -> None:
    if grid.width < 3 or grid.height < 3:
        raise MapInvalidError(f"grid must be at least 3x3, got {grid.width}x{grid.height}")
    for x in range(grid.width):
        if grid.rows[0][x] != "#" or grid.rows[-1][x] != "#":
            raise MapInvalidError("top/bottom border must be wall")
    for y in range(grid.height):
        if grid.rows[y][0] != "#" or grid.rows[y][-1] != "#":
            raise MapInvalidError("left/right border must be wall")
    floors = grid.floor_cells()
    if not floors:
        raise MapInvalidError("map has no floor cells")
    reachable = grid_distances(grid, floors[0])
    if len(reachable) != len(floors):
        missing = sorted(set(floors) - set(reachable))
        raise MapInvalidError(f"floor not 4-connected; unreachable cells: {missing[:5]}")
    if not graph.waypoints:
        raise MapInvalidError("map declares no waypoints")
    if not graph.is_connected():
        raise MapInvalidError("waypoint graph is not connected")
