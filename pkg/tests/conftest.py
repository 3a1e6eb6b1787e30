"""Shared fixtures: canonical maps, random-map generation, scenario helpers."""

from __future__ import annotations

import random

import pytest

from qsmodels.arena import MapBundle, load_map

# 5x5 room, three waypoints in a row, health item in the middle.
T1_MAP = """\
#####
#...#
#...#
#...#
#####
waypoints: w0 1 1 ; w1 2 1 ; w2 3 1
edges: w0 w1 ; w1 w2
items: h1 health w1
spawn: bot w0 ; enemy w2
"""

# Long corridor: spawns out of combat range but in line of sight.
CORRIDOR_MAP = """\
###########
#.........#
###########
waypoints: w0 1 1 ; w1 4 1 ; w2 9 1
edges: w0 w1 ; w1 w2
items: h1 health w1
spawn: bot w0 ; enemy w2
"""

# Long open corridor with a tier-2 weapon the bot must fetch before
# attacking; the enemy reaches it first while still out of combat range.
WEAPON_MAP = """\
###############
#.............#
###############
waypoints: w0 1 1 ; w1 10 1 ; w2 13 1
edges: w0 w1 ; w1 w2
items: g1 weapon2 w1
spawn: bot w0 ; enemy w2
"""


@pytest.fixture
def t1() -> MapBundle:
    return load_map(T1_MAP)


@pytest.fixture
def corridor() -> MapBundle:
    return load_map(CORRIDOR_MAP)


@pytest.fixture
def weapon_bundle() -> MapBundle:
    return load_map(WEAPON_MAP)


def random_connected_grid(rng: random.Random, width: int, height: int) -> list[str]:
    """Carve a connected floor region by random walk from the center."""
    rows = [["#"] * width for _ in range(height)]
    x, y = width // 2, height // 2
    rows[y][x] = "."
    carve_target = max(3, (width - 2) * (height - 2) // 2)
    carved = 1
    guard = 0
    while carved < carve_target and guard < 10_000:
        guard += 1
        dx, dy = rng.choice([(0, -1), (1, 0), (0, 1), (-1, 0)])
        nx, ny = x + dx, y + dy
        if 1 <= nx < width - 1 and 1 <= ny < height - 1:
            x, y = nx, ny
            if rows[y][x] == "#":
                rows[y][x] = "."
                carved += 1
    return ["".join(r) for r in rows]


def random_map_text(rng: random.Random, width: int = 9, height: int = 7) -> str:
    """Random connected map with waypoints on distinct floor cells."""
    rows = random_connected_grid(rng, width, height)
    floors = [
        (x, y) for y in range(height) for x in range(width) if rows[y][x] == "."
    ]
    n_wp = min(len(floors), rng.randint(2, 5))
    cells = rng.sample(floors, n_wp)
    waypoints = [(f"w{i}", c) for i, c in enumerate(cells)]
    edges = [(f"w{i}", f"w{i + 1}") for i in range(n_wp - 1)]  # path graph: connected
    lines = list(rows)
    lines.append(
        "waypoints: " + " ; ".join(f"{w} {c[0]} {c[1]}" for w, c in waypoints)
    )
    lines.append("edges: " + " ; ".join(f"{a} {b}" for a, b in edges))
    lines.append("items: h1 health w0")
    lines.append(f"spawn: bot w0 ; enemy w{n_wp - 1}")
    return "\n".join(lines) + "\n"


ACCEPTANCE_RESULTS: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name, status in ACCEPTANCE_RESULTS.items():
        terminalreporter.write_line(f"{status}: {name}")
