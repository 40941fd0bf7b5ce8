"""Differential-drive rover kinematics and an IR range-sensor model.

The rover drives at constant linear speed; only the turn rate is commanded.
One control period is integrated in closed form (circular arc, or the
straight-line limit for near-zero turn rate), so a step carries no
integrator error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import ObstacleMap, ray_rect_exit, ray_rect_intersection

TURN_RATE_EPS = 1e-9


def wrap_angle(angle: float) -> float:
    """Wrap an angle into (-pi, pi]."""
    wrapped = math.remainder(angle, math.tau)
    if wrapped <= -math.pi:
        wrapped += math.tau
    return wrapped


@dataclass(frozen=True)
class RoverParams:
    """Rover body, actuation, and sensor constants (meters, seconds, radians)."""

    radius: float = 0.09
    v_const: float = 0.1
    omega_max: float = 2.5
    dt: float = 0.05
    sensor_angles: tuple[float, ...] = (
        -math.pi / 2,
        -math.pi / 4,
        0.0,
        math.pi / 4,
        math.pi / 2,
    )
    sensor_min_range: float = 0.04
    sensor_max_range: float = 0.30

    def __post_init__(self) -> None:
        object.__setattr__(self, "sensor_angles", tuple(self.sensor_angles))
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        if self.v_const <= 0:
            raise ValueError("v_const must be positive")
        if self.omega_max <= 0:
            raise ValueError("omega_max must be positive")
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if not 0 <= self.sensor_min_range < self.sensor_max_range:
            raise ValueError("sensor ranges must satisfy 0 <= min < max")


@dataclass(frozen=True)
class Pose:
    """Planar pose; theta is kept in (-pi, pi] by the functions producing poses."""

    x: float
    y: float
    theta: float


@dataclass(frozen=True)
class SensorScan:
    """One reading per sensor angle, clamped into [sensor_min_range, sensor_max_range]."""

    readings: tuple[float, ...]


def step_unicycle(pose: Pose, v: float, omega: float, dt: float) -> Pose:
    """Advance the unicycle exactly over one period of constant (v, omega).

    Below TURN_RATE_EPS the circular arc degenerates to its straight-line
    limit.
    """
    theta_next = wrap_angle(pose.theta + omega * dt)
    if abs(omega) > TURN_RATE_EPS:
        r = v / omega
        swept = pose.theta + omega * dt
        x = pose.x + r * (math.sin(swept) - math.sin(pose.theta))
        y = pose.y - r * (math.cos(swept) - math.cos(pose.theta))
    else:
        x = pose.x + v * dt * math.cos(pose.theta)
        y = pose.y + v * dt * math.sin(pose.theta)
    return Pose(x, y, theta_next)


def sense(pose: Pose, params: RoverParams, obstacle_map: ObstacleMap) -> SensorScan:
    """Cast one ray per sensor and clamp each hit into the sensor range.

    Rays see obstacle faces and the arena walls (read from inside, so the
    wall distance is the ray's exit from the arena). With nothing in range a
    reading saturates at sensor_max_range.
    """
    origin = (pose.x, pose.y)
    readings = []
    for angle in params.sensor_angles:
        heading = pose.theta + angle
        direction = (math.cos(heading), math.sin(heading))
        hit = ray_rect_exit(origin, direction, obstacle_map.arena)
        nearest = hit if hit is not None else math.inf
        for obstacle in obstacle_map.obstacles:
            t = ray_rect_intersection(origin, direction, obstacle)
            if t is not None and t < nearest:
                nearest = t
        if math.isinf(nearest):
            nearest = params.sensor_max_range
        readings.append(min(max(nearest, params.sensor_min_range), params.sensor_max_range))
    return SensorScan(tuple(readings))
