"""Falsification toolkit for a differential-drive rover's collision freedom.

The package searches for collision-free states from which one controller
time step produces a collision, using particle swarm optimization over the
six-dimensional state (pose, turn rate, navigation target).
"""

from .config import ConfigError, load_config, scenario_from_config, scenario_to_config, swarm_from_config
from .controller import ControllerMemory, ControllerParams, control
from .falsifier import (
    BUILTIN_SCENARIOS,
    CampaignReport,
    Counterexample,
    Scenario,
    SearchState,
    corner_scenario,
    default_bounds,
    make_objective,
    objective,
    run_campaign,
    simulate_step,
    validate,
)
from .geometry import (
    ObstacleMap,
    Rect,
    arena_clearance,
    is_collision,
    min_distance_to_obstacles,
    point_rect_distance,
    ray_rect_exit,
    ray_rect_intersection,
)
from .optimizer import (
    Particle,
    SearchSpace,
    SwarmParams,
    SwarmResult,
    init_swarm,
    pso_minimize,
    spawn_particle_rngs,
    step_swarm,
)
from .plant import Pose, RoverParams, SensorScan, sense, step_unicycle, wrap_angle
from .report import counterexample_from_dict, counterexample_to_dict, emit_report

__version__ = "0.1.0"

__all__ = [
    "BUILTIN_SCENARIOS",
    "CampaignReport",
    "ConfigError",
    "ControllerMemory",
    "ControllerParams",
    "Counterexample",
    "ObstacleMap",
    "Particle",
    "Pose",
    "Rect",
    "RoverParams",
    "Scenario",
    "SearchSpace",
    "SearchState",
    "SensorScan",
    "SwarmParams",
    "SwarmResult",
    "arena_clearance",
    "control",
    "corner_scenario",
    "counterexample_from_dict",
    "counterexample_to_dict",
    "default_bounds",
    "emit_report",
    "init_swarm",
    "is_collision",
    "load_config",
    "make_objective",
    "min_distance_to_obstacles",
    "objective",
    "point_rect_distance",
    "pso_minimize",
    "ray_rect_exit",
    "ray_rect_intersection",
    "run_campaign",
    "scenario_from_config",
    "scenario_to_config",
    "sense",
    "simulate_step",
    "spawn_particle_rngs",
    "step_swarm",
    "step_unicycle",
    "swarm_from_config",
    "validate",
    "wrap_angle",
]
