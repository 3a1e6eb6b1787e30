"""Grid geometry: BFS paths, nearest waypoints, and supercover line of sight."""

from __future__ import annotations

from collections import deque

from .model import DELTA, DIRECTIONS, Cell, GridMap, WaypointGraph


class NoPath(Exception):
    """No 4-connected floor path exists (cannot occur on valid maps)."""


def grid_distances(grid: GridMap, origin: Cell) -> dict[Cell, int]:
    """BFS distance from origin to every reachable floor cell."""
    dist = {origin: 0}
    queue: deque[Cell] = deque([origin])
    while queue:
        cur = queue.popleft()
        cx, cy = cur
        for d in DIRECTIONS:
            dx, dy = DELTA[d]
            nxt = (cx + dx, cy + dy)
            if nxt not in dist and grid.is_floor(nxt):
                dist[nxt] = dist[cur] + 1
                queue.append(nxt)
    return dist


def shortest_path(grid: GridMap, start: Cell, goal: Cell) -> list[Cell]:
    """Minimal 4-connected path including both endpoints.

    Among equal-length paths, returns the lexicographically smallest
    direction sequence under N < E < S < W: walk greedily from the start,
    always taking the first direction that stays on a shortest path.
    """
    if not grid.is_floor(start) or not grid.is_floor(goal):
        raise NoPath(f"endpoint not on floor: {start} -> {goal}")
    dist = grid_distances(grid, goal)
    if start not in dist:
        raise NoPath(f"{goal} unreachable from {start}")
    path = [start]
    cur = start
    while cur != goal:
        cx, cy = cur
        for d in DIRECTIONS:  # N < E < S < W fixes the tie-break
            dx, dy = DELTA[d]
            nxt = (cx + dx, cy + dy)
            if dist.get(nxt, -1) == dist[cur] - 1:
                cur = nxt
                break
        path.append(cur)
    return path


def supercover_line(a: Cell, b: Cell) -> list[Cell]:
    """Every cell the segment between the two cell centers touches.

    Symmetric in its endpoints: passing exactly through a grid corner adds
    both adjacent cells, so the traversed set is identical for (a, b) and
    (b, a).
    """
    (x0, y0), (x1, y1) = a, b
    nx, ny = abs(x1 - x0), abs(y1 - y0)
    sx = 1 if x1 > x0 else -1
    sy = 1 if y1 > y0 else -1
    x, y = x0, y0
    cells = [(x, y)]
    ix = iy = 0
    while ix < nx or iy < ny:
        # Compare the next vertical/horizontal crossing times:
        # (ix + 0.5) / nx  vs  (iy + 0.5) / ny, cross-multiplied.
        tx = (2 * ix + 1) * ny
        ty = (2 * iy + 1) * nx
        if tx < ty:
            x += sx
            ix += 1
        elif tx > ty:
            y += sy
            iy += 1
        else:  # exact corner: include both side cells
            cells.append((x + sx, y))
            cells.append((x, y + sy))
            x += sx
            y += sy
            ix += 1
            iy += 1
        cells.append((x, y))
    return cells


def line_of_sight(grid: GridMap, a: Cell, b: Cell) -> bool:
    """True iff no wall cell lies on the supercover line between a and b."""
    return all(grid.is_floor(c) for c in supercover_line(a, b))


def nearest_waypoint(grid: GridMap, graph: WaypointGraph, cell: Cell) -> str:
    """Waypoint nearest by shortest-path distance; ties go to the smallest id."""
    dist = grid_distances(grid, cell)
    best: tuple[int, str] | None = None
    for wid, wcell in graph.waypoints:
        d = dist.get(wcell)
        if d is None:
            continue
        if best is None or (d, wid) < best:
            best = (d, wid)
    if best is None:
        raise NoPath(f"no waypoint reachable from {cell}")
    return best[1]


def euclidean_within(a: Cell, b: Cell, radius: int) -> bool:
    """Exact integer check for euclidean distance <= radius."""
    dx, dy = a[0] - b[0], a[1] - b[1]
    return dx * dx + dy * dy <= radius * radius
