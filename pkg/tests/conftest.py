import math

import pytest
from hypothesis import HealthCheck, settings

from falsify import ControllerParams, ObstacleMap, Rect, RoverParams, Scenario, SearchSpace, corner_scenario

settings.register_profile(
    "suite", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("suite")


@pytest.fixture
def corner() -> Scenario:
    return corner_scenario()


@pytest.fixture
def empty_scenario() -> Scenario:
    """Obstacle-free arena whose search box is inset far enough from the
    walls that one step (v_const * dt plus the body radius) cannot reach
    them, so no state in the box can produce any collision."""
    arena = Rect(0.0, 0.0, 4.0, 4.0)
    rover = RoverParams()
    inset = rover.radius + rover.v_const * rover.dt + 0.05
    bounds = SearchSpace(
        lower=(inset, inset, -math.pi, -rover.omega_max, inset, inset),
        upper=(4.0 - inset, 4.0 - inset, math.pi, rover.omega_max, 4.0 - inset, 4.0 - inset),
    )
    return Scenario(
        name="empty",
        map=ObstacleMap(arena=arena, obstacles=()),
        rover=rover,
        controller=ControllerParams(),
        bounds=bounds,
    )
