from .geometry import (
    NoPath,
    euclidean_within,
    grid_distances,
    line_of_sight,
    nearest_waypoint,
    shortest_path,
    supercover_line,
)
from .mapfile import MapBundle, MapInvalidError, MapParseError, load_map
from .model import (
    AMMO,
    DELTA,
    DIRECTIONS,
    FIRE,
    HEALTH,
    IDLE,
    OPPOSITE,
    AgentState,
    Cell,
    Command,
    GridMap,
    Item,
    ItemKind,
    WaypointGraph,
    WorldState,
    move_step,
    turn,
    weapon,
)
from .sim import DEFAULT_COMBAT, CombatConfig, initial_world, step

__all__ = [
    "AMMO",
    "DEFAULT_COMBAT",
    "DELTA",
    "DIRECTIONS",
    "FIRE",
    "HEALTH",
    "IDLE",
    "OPPOSITE",
    "AgentState",
    "Cell",
    "CombatConfig",
    "Command",
    "GridMap",
    "Item",
    "ItemKind",
    "MapBundle",
    "MapInvalidError",
    "MapParseError",
    "NoPath",
    "WaypointGraph",
    "WorldState",
    "euclidean_within",
    "grid_distances",
    "initial_world",
    "line_of_sight",
    "load_map",
    "move_step",
    "nearest_waypoint",
    "shortest_path",
    "step",
    "supercover_line",
    "turn",
    "weapon",
]
