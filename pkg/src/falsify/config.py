"""JSON configuration for scenarios and swarm settings.

A config file is a JSON object with a "scenario" section and an optional
"swarm" section. Every field except the arena has a default, so a minimal
file is {"scenario": {"arena": {...}}}. Errors carry the file position or
the field path that caused them.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

from .controller import ControllerParams
from .falsifier import BUILTIN_SCENARIOS, Scenario, default_bounds
from .geometry import ObstacleMap, Rect
from .optimizer import SearchSpace, SwarmParams
from .plant import RoverParams


class ConfigError(Exception):
    """A config file failed to parse or violated a documented invariant."""


_RECT_FIELDS = ("x_min", "y_min", "x_max", "y_max")
_SCENARIO_FIELDS = ("name", "arena", "obstacles", "rover", "controller", "bounds")
_ROVER_FIELDS = (
    "radius",
    "v_const",
    "omega_max",
    "dt",
    "sensor_angles",
    "sensor_min_range",
    "sensor_max_range",
)
_CONTROLLER_FIELDS = ("kp", "ki", "kd", "blend_threshold", "blend_alpha")
_SWARM_FIELDS = (
    "swarm_size",
    "max_iterations",
    "inertia_weight",
    "cognitive_coefficient",
    "social_coefficient",
    "target_value",
    "max_velocity_fraction",
    "seed",
)
_BOUNDS_FIELDS = ("lower", "upper")


def _check_object(value: Any, path: str, allowed: tuple[str, ...]) -> dict:
    if not isinstance(value, dict):
        raise ConfigError(f"{path}: expected an object")
    for key in value:
        if key not in allowed:
            raise ConfigError(f"{path}: unknown field '{key}' (expected one of: {', '.join(allowed)})")
    return value


def _number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}: expected a number")
    return float(value)


def _integer(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{path}: expected an integer")
    return value


def _number_list(value: Any, path: str) -> tuple[float, ...]:
    if not isinstance(value, list):
        raise ConfigError(f"{path}: expected a list of numbers")
    return tuple(_number(item, f"{path}[{index}]") for index, item in enumerate(value))


def _build(path: str, factory, /, **kwargs):
    # Dataclass invariant violations become config errors naming the section.
    try:
        return factory(**kwargs)
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def _rect_from(value: Any, path: str) -> Rect:
    section = _check_object(value, path, _RECT_FIELDS)
    corners = {}
    for key in _RECT_FIELDS:
        if key not in section:
            raise ConfigError(f"{path}: missing field '{key}'")
        corners[key] = _number(section[key], f"{path}.{key}")
    return _build(path, Rect, **corners)


def _rover_from(value: Any, path: str) -> RoverParams:
    section = _check_object(value, path, _ROVER_FIELDS)
    kwargs: dict[str, Any] = {}
    for key in ("radius", "v_const", "omega_max", "dt", "sensor_min_range", "sensor_max_range"):
        if key in section:
            kwargs[key] = _number(section[key], f"{path}.{key}")
    if "sensor_angles" in section:
        kwargs["sensor_angles"] = _number_list(section["sensor_angles"], f"{path}.sensor_angles")
    return _build(path, RoverParams, **kwargs)


def _controller_from(value: Any, path: str) -> ControllerParams:
    section = _check_object(value, path, _CONTROLLER_FIELDS)
    kwargs = {key: _number(section[key], f"{path}.{key}") for key in _CONTROLLER_FIELDS if key in section}
    return _build(path, ControllerParams, **kwargs)


def _bounds_from(value: Any, path: str) -> SearchSpace:
    section = _check_object(value, path, _BOUNDS_FIELDS)
    for key in _BOUNDS_FIELDS:
        if key not in section:
            raise ConfigError(f"{path}: missing field '{key}'")
    return _build(
        path,
        SearchSpace,
        lower=_number_list(section["lower"], f"{path}.lower"),
        upper=_number_list(section["upper"], f"{path}.upper"),
    )


def scenario_from_config(value: Any, path: str = "scenario") -> Scenario:
    """Build a validated Scenario from a parsed config section."""
    section = _check_object(value, path, _SCENARIO_FIELDS)
    if "arena" not in section:
        raise ConfigError(f"{path}: missing field 'arena'")
    arena = _rect_from(section["arena"], f"{path}.arena")

    obstacles = []
    raw_obstacles = section.get("obstacles", [])
    if not isinstance(raw_obstacles, list):
        raise ConfigError(f"{path}.obstacles: expected a list")
    for index, item in enumerate(raw_obstacles):
        obstacles.append(_rect_from(item, f"{path}.obstacles[{index}]"))

    name = section.get("name", "custom")
    if not isinstance(name, str) or not name:
        raise ConfigError(f"{path}.name: expected a nonempty string")

    rover = _rover_from(section.get("rover", {}), f"{path}.rover")
    controller = _controller_from(section.get("controller", {}), f"{path}.controller")
    obstacle_map = _build(f"{path}.obstacles", ObstacleMap, arena=arena, obstacles=tuple(obstacles))
    if "bounds" in section:
        bounds = _bounds_from(section["bounds"], f"{path}.bounds")
    else:
        bounds = default_bounds(arena, rover)

    return _build(path, Scenario, name=name, map=obstacle_map, rover=rover, controller=controller, bounds=bounds)


def swarm_from_config(value: Any, path: str = "swarm") -> SwarmParams:
    """Build SwarmParams from a parsed config section; omitted fields default."""
    section = _check_object(value, path, _SWARM_FIELDS)
    kwargs: dict[str, Any] = {}
    for key in ("swarm_size", "max_iterations", "seed"):
        if key in section:
            kwargs[key] = _integer(section[key], f"{path}.{key}")
    for key in (
        "inertia_weight",
        "cognitive_coefficient",
        "social_coefficient",
        "target_value",
        "max_velocity_fraction",
    ):
        if key in section:
            kwargs[key] = _number(section[key], f"{path}.{key}")
    return _build(path, SwarmParams, **kwargs)


def _rect_to(rect: Rect) -> dict:
    return {"x_min": rect.x_min, "y_min": rect.y_min, "x_max": rect.x_max, "y_max": rect.y_max}


def scenario_to_config(scenario: Scenario, params: SwarmParams | None = None) -> dict:
    """Serialize to the config schema; load_config on the result round-trips."""
    document: dict[str, Any] = {
        "scenario": {
            "name": scenario.name,
            "arena": _rect_to(scenario.map.arena),
            "obstacles": [_rect_to(rect) for rect in scenario.map.obstacles],
            "rover": {
                "radius": scenario.rover.radius,
                "v_const": scenario.rover.v_const,
                "omega_max": scenario.rover.omega_max,
                "dt": scenario.rover.dt,
                "sensor_angles": list(scenario.rover.sensor_angles),
                "sensor_min_range": scenario.rover.sensor_min_range,
                "sensor_max_range": scenario.rover.sensor_max_range,
            },
            "controller": {
                "kp": scenario.controller.kp,
                "ki": scenario.controller.ki,
                "kd": scenario.controller.kd,
                "blend_threshold": scenario.controller.blend_threshold,
                "blend_alpha": scenario.controller.blend_alpha,
            },
            "bounds": {
                "lower": list(scenario.bounds.lower),
                "upper": list(scenario.bounds.upper),
            },
        }
    }
    if params is not None:
        swarm = {
            "swarm_size": params.swarm_size,
            "max_iterations": params.max_iterations,
            "inertia_weight": params.inertia_weight,
            "cognitive_coefficient": params.cognitive_coefficient,
            "social_coefficient": params.social_coefficient,
            "max_velocity_fraction": params.max_velocity_fraction,
            "seed": params.seed,
        }
        # -inf (the "never stop early" default) has no JSON literal; omit it.
        if math.isfinite(params.target_value):
            swarm["target_value"] = params.target_value
        document["swarm"] = swarm
    return document


def load_config(source: str | Path) -> tuple[Scenario, SwarmParams]:
    """Resolve a built-in scenario name or load a JSON config file."""
    text_source = str(source)
    if text_source in BUILTIN_SCENARIOS:
        return BUILTIN_SCENARIOS[text_source](), SwarmParams()

    path = Path(source)
    if not path.is_file():
        known = ", ".join(sorted(BUILTIN_SCENARIOS))
        raise ConfigError(
            f"'{text_source}' is neither a built-in scenario (known: {known}) nor an existing config file"
        )
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc

    document = _check_object(data, str(path), ("scenario", "swarm"))
    if "scenario" not in document:
        raise ConfigError(f"{path}: missing field 'scenario'")
    scenario = scenario_from_config(document["scenario"])
    params = swarm_from_config(document.get("swarm", {}))
    return scenario, params
