"""Planar world geometry: axis-aligned obstacle rectangles, distances, ray casts.

The rover is modeled as a closed disc, so collision tests compare
center-to-rectangle distances against the rover radius. All coordinates are
meters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

Point = tuple[float, float]

_PARALLEL_EPS = 1e-15


@dataclass(frozen=True)
class Rect:
    """Closed axis-aligned rectangle."""

    x_min: float
    y_min: float
    x_max: float
    y_max: float

    def __post_init__(self) -> None:
        if not self.x_min < self.x_max:
            raise ValueError(f"x_min ({self.x_min}) must be less than x_max ({self.x_max})")
        if not self.y_min < self.y_max:
            raise ValueError(f"y_min ({self.y_min}) must be less than y_max ({self.y_max})")

    @property
    def width(self) -> float:
        return self.x_max - self.x_min

    @property
    def height(self) -> float:
        return self.y_max - self.y_min

    @property
    def diagonal(self) -> float:
        return math.hypot(self.width, self.height)

    def contains(self, p: Point) -> bool:
        x, y = p
        return self.x_min <= x <= self.x_max and self.y_min <= y <= self.y_max

    def intersects(self, other: "Rect") -> bool:
        return (
            self.x_min <= other.x_max
            and other.x_min <= self.x_max
            and self.y_min <= other.y_max
            and other.y_min <= self.y_max
        )


@dataclass(frozen=True)
class ObstacleMap:
    """Arena bounds plus unsafe rectangles. Every obstacle must overlap the arena."""

    arena: Rect
    obstacles: tuple[Rect, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "obstacles", tuple(self.obstacles))
        for i, obstacle in enumerate(self.obstacles):
            if not obstacle.intersects(self.arena):
                raise ValueError(f"obstacle {i} does not intersect the arena")


def point_rect_distance(p: Point, rect: Rect) -> float:
    """Euclidean distance from p to the closed rectangle; 0 inside or on the boundary."""
    x, y = p
    dx = max(rect.x_min - x, 0.0, x - rect.x_max)
    dy = max(rect.y_min - y, 0.0, y - rect.y_max)
    return math.hypot(dx, dy)


def arena_clearance(p: Point, arena: Rect) -> float:
    """Distance from p to the nearest arena wall; negative outside the arena."""
    x, y = p
    return min(x - arena.x_min, arena.x_max - x, y - arena.y_min, arena.y_max - y)


def min_distance_to_obstacles(p: Point, obstacle_map: ObstacleMap, rover_radius: float) -> float:
    """Distance from the rover body boundary at p to the nearest obstacle, floored at 0.

    With no obstacles the arena diagonal is returned: a finite stand-in that
    dominates every distance reachable inside the arena.
    """
    if not obstacle_map.obstacles:
        return obstacle_map.arena.diagonal
    nearest = min(point_rect_distance(p, obstacle) for obstacle in obstacle_map.obstacles)
    return max(0.0, nearest - rover_radius)


def is_collision(p: Point, rover_radius: float, obstacle_map: ObstacleMap) -> bool:
    """True when a disc of rover_radius centered at p touches an obstacle or the arena boundary.

    Touching counts as collision; the condition is closed. Leaving the arena
    is a collision as well.
    """
    if arena_clearance(p, obstacle_map.arena) <= rover_radius:
        return True
    return any(
        point_rect_distance(p, obstacle) <= rover_radius for obstacle in obstacle_map.obstacles
    )


def _slab_interval(origin: Point, direction: Point, rect: Rect) -> tuple[float, float] | None:
    ox, oy = origin
    dx, dy = direction
    t_near = -math.inf
    t_far = math.inf
    for o, d, lo, hi in ((ox, dx, rect.x_min, rect.x_max), (oy, dy, rect.y_min, rect.y_max)):
        if abs(d) < _PARALLEL_EPS:
            if o < lo or o > hi:
                return None
            continue
        t0 = (lo - o) / d
        t1 = (hi - o) / d
        if t0 > t1:
            t0, t1 = t1, t0
        if t0 > t_near:
            t_near = t0
        if t1 < t_far:
            t_far = t1
        if t_near > t_far:
            return None
    return t_near, t_far


def ray_rect_intersection(origin: Point, direction: Point, rect: Rect) -> float | None:
    """Smallest t >= 0 with origin + t*direction on the closed rectangle, else None.

    Slab method. direction must be a unit vector (callers guarantee this to
    within 1e-9). An origin inside the rectangle yields 0.
    """
    interval = _slab_interval(origin, direction, rect)
    if interval is None:
        return None
    t_near, t_far = interval
    if t_far < 0.0:
        return None
    return max(t_near, 0.0)


def ray_rect_exit(origin: Point, direction: Point, rect: Rect) -> float | None:
    """Forward distance to the last boundary crossing (the far slab), else None.

    This is the wall distance seen by a sensor inside the rectangle; used to
    read the arena walls from inside the arena.
    """
    interval = _slab_interval(origin, direction, rect)
    if interval is None:
        return None
    t_near, t_far = interval
    if t_far < 0.0:
        return None
    return t_far
