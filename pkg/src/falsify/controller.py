"""Go-to-goal heading controller with obstacle-avoidance blending.

The controller steers toward the target and, when any sensor reads below the
activation threshold, mixes in a direction pointing away from the sensed
obstacle mass. A PID loop on the heading error produces the turn rate; the
linear speed is fixed by the rover and never commanded here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import Point
from .plant import Pose, RoverParams, SensorScan, wrap_angle

GOAL_EPS = 1e-9
_DIRECTION_EPS = 1e-12
_INTEGRAL_GAIN_FLOOR = 1e-9


@dataclass(frozen=True)
class ControllerParams:
    """PID gains on heading error plus obstacle-avoidance blending constants."""

    kp: float = 4.0
    ki: float = 0.01
    kd: float = 0.05
    blend_threshold: float = 0.25
    blend_alpha: float = 0.6

    def __post_init__(self) -> None:
        if self.kp <= 0:
            raise ValueError("kp must be positive")
        if self.ki < 0 or self.kd < 0:
            raise ValueError("ki and kd must be nonnegative")
        if not 0 <= self.blend_alpha <= 1:
            raise ValueError("blend_alpha must lie in [0, 1]")
        if self.blend_threshold <= 0:
            raise ValueError("blend_threshold must be positive")


@dataclass(frozen=True)
class ControllerMemory:
    """PID state carried between calls; owned by a single evaluation."""

    integral_error: float = 0.0
    previous_error: float = 0.0
    initialized: bool = False


def control(
    pose: Pose,
    scan: SensorScan,
    target: Point,
    params: ControllerParams,
    rover: RoverParams,
    memory: ControllerMemory,
    omega_prev: float = 0.0,
) -> tuple[float, ControllerMemory]:
    """Compute the turn rate for one control period.

    On the first call of an evaluation (memory not yet initialized) the
    derivative history is seeded from omega_prev as omega_prev * dt / kp, the
    heading error that would have produced that turn rate through the
    proportional term alone. A target closer than GOAL_EPS is treated as
    reached and yields zero turn rate.
    """
    gx = target[0] - pose.x
    gy = target[1] - pose.y
    goal_distance = math.hypot(gx, gy)
    if goal_distance < GOAL_EPS:
        return 0.0, memory

    ux = gx / goal_distance
    uy = gy / goal_distance

    # Avoidance direction: away from the weighted sum of active sensor rays.
    ax = 0.0
    ay = 0.0
    any_active = False
    for angle, reading in zip(rover.sensor_angles, scan.readings):
        if reading < params.blend_threshold:
            any_active = True
            weight = (params.blend_threshold - reading) / params.blend_threshold
            ray = pose.theta + angle
            ax -= weight * math.cos(ray)
            ay -= weight * math.sin(ray)

    if any_active:
        avoid_norm = math.hypot(ax, ay)
        if avoid_norm > _DIRECTION_EPS:
            bx = params.blend_alpha * (ax / avoid_norm) + (1.0 - params.blend_alpha) * ux
            by = params.blend_alpha * (ay / avoid_norm) + (1.0 - params.blend_alpha) * uy
            if math.hypot(bx, by) > _DIRECTION_EPS:
                # atan2 is scale invariant, so the blend needs no renormalizing.
                ux, uy = bx, by
        # A canceled avoidance sum (symmetric scene) falls back to the goal direction.

    error = wrap_angle(math.atan2(uy, ux) - pose.theta)
    previous_error = (
        memory.previous_error if memory.initialized else omega_prev * rover.dt / params.kp
    )

    integral_bound = rover.omega_max / max(params.ki, _INTEGRAL_GAIN_FLOOR)
    integral = memory.integral_error + error * rover.dt
    integral = min(max(integral, -integral_bound), integral_bound)

    omega = (
        params.kp * error
        + params.ki * integral
        + params.kd * (error - previous_error) / rover.dt
    )
    omega = min(max(omega, -rover.omega_max), rover.omega_max)
    return omega, ControllerMemory(integral, error, True)
