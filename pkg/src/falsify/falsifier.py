"""One-step falsification of the rover's collision-freedom property.

A search state fixes the rover pose, its rotational velocity at the start of
the step, and the navigation target. The objective simulates exactly one
controller period from that state and measures how close the successor comes
to a collision: zero means the successor collides, so a collision-free state
with objective zero is a counterexample to "safe states stay safe for one
step". A campaign runs the swarm optimizer against this objective several
times with consecutive seeds and validates every hit by re-simulation.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .controller import ControllerMemory, ControllerParams, control
from .geometry import ObstacleMap, Rect, arena_clearance, is_collision, min_distance_to_obstacles, point_rect_distance
from .optimizer import SearchSpace, SwarmParams, SwarmResult, pso_minimize
from .plant import Pose, RoverParams, sense, step_unicycle, wrap_angle

STATE_FIELDS = ("x", "y", "theta", "omega", "x_T", "y_T")


@dataclass(frozen=True)
class SearchState:
    """A point of the six-dimensional search box."""

    x: float
    y: float
    theta: float
    omega: float
    x_T: float
    y_T: float

    def as_vector(self) -> tuple[float, ...]:
        return (self.x, self.y, self.theta, self.omega, self.x_T, self.y_T)

    @classmethod
    def from_vector(cls, vector) -> "SearchState":
        x, y, theta, omega, x_t, y_t = (float(v) for v in vector)
        return cls(x, y, theta, omega, x_t, y_t)


@dataclass(frozen=True)
class Scenario:
    """Everything a falsification campaign needs: world, rover, controller, box."""

    name: str
    map: ObstacleMap
    rover: RoverParams
    controller: ControllerParams
    bounds: SearchSpace

    def __post_init__(self) -> None:
        if self.bounds.dimension != len(STATE_FIELDS):
            raise ValueError(f"bounds must cover the {len(STATE_FIELDS)} state dimensions")
        arena = self.map.arena
        for axis, label in ((0, "x"), (4, "x_T")):
            if self.bounds.lower[axis] < arena.x_min or self.bounds.upper[axis] > arena.x_max:
                raise ValueError(f"{label} bounds must lie within the arena")
        for axis, label in ((1, "y"), (5, "y_T")):
            if self.bounds.lower[axis] < arena.y_min or self.bounds.upper[axis] > arena.y_max:
                raise ValueError(f"{label} bounds must lie within the arena")
        # The blend threshold only makes sense inside the sensor's span;
        # ControllerParams cannot check this alone.
        if not self.rover.sensor_min_range < self.controller.blend_threshold <= self.rover.sensor_max_range:
            raise ValueError("blend_threshold must lie within (sensor_min_range, sensor_max_range]")


@dataclass(frozen=True)
class Counterexample:
    """A collision-free state whose one-step successor collides."""

    state: SearchState
    successor_pose: Pose
    omega_applied: float
    objective_value: float
    seed: int
    evaluations_to_find: int


# One objective evaluation as the falsifier saw it: (state, value).
StateEvaluation = tuple[SearchState, float]


@dataclass(frozen=True)
class CampaignReport:
    """Everything a campaign produced, one entry per run in run order."""

    scenario: Scenario
    params: SwarmParams
    counterexamples: tuple[Counterexample, ...]
    runs: tuple[SwarmResult, ...]
    visited_states: tuple[tuple[StateEvaluation, ...], ...]
    wall_times: tuple[float, ...]


def simulate_step(state: SearchState, scenario: Scenario) -> tuple[float, Pose]:
    """Run the controller for one period from state; return (omega, successor).

    Controller memory starts fresh with the derivative history seeded from
    state.omega, so every call is an independent one-step experiment.
    """
    pose = Pose(state.x, state.y, wrap_angle(state.theta))
    scan = sense(pose, scenario.rover, scenario.map)
    omega, _ = control(
        pose,
        scan,
        (state.x_T, state.y_T),
        scenario.controller,
        scenario.rover,
        ControllerMemory(),
        omega_prev=state.omega,
    )
    successor = step_unicycle(pose, scenario.rover.v_const, omega, scenario.rover.dt)
    return omega, successor


def _nearest_clearance(p: tuple[float, float], scenario: Scenario) -> float:
    """Smallest center distance to any wall or obstacle (negative outside)."""
    clearance = arena_clearance(p, scenario.map.arena)
    for rect in scenario.map.obstacles:
        clearance = min(clearance, point_rect_distance(p, rect))
    return clearance


def objective(state: SearchState, scenario: Scenario) -> float:
    """Distance from the one-step successor to collision; zero iff it collides.

    States that already collide cannot witness anything, so they score a
    penalty of arena diagonal plus the clearance deficit: always above every
    legitimate distance value, and decreasing toward the feasible region so
    the swarm is pushed out of it.
    """
    rover = scenario.rover
    start = (state.x, state.y)
    if is_collision(start, rover.radius, scenario.map):
        return scenario.map.arena.diagonal + (rover.radius - _nearest_clearance(start, scenario))

    _, successor = simulate_step(state, scenario)
    end = (successor.x, successor.y)
    if is_collision(end, rover.radius, scenario.map):
        return 0.0
    return min_distance_to_obstacles(end, scenario.map, rover.radius)


def make_objective(scenario: Scenario) -> Callable[[np.ndarray], float]:
    """Adapt the objective to the optimizer's vector-in, scalar-out shape."""

    def evaluate(vector: np.ndarray) -> float:
        return objective(SearchState.from_vector(vector), scenario)

    return evaluate


def validate(candidate: Counterexample, scenario: Scenario) -> bool:
    """Independently re-simulate a counterexample.

    True iff the recorded state is collision-free, its freshly simulated
    successor collides, and that successor matches the recorded pose to 1e-9.
    """
    state = candidate.state
    rover = scenario.rover
    if is_collision((state.x, state.y), rover.radius, scenario.map):
        return False
    _, successor = simulate_step(state, scenario)
    if not is_collision((successor.x, successor.y), rover.radius, scenario.map):
        return False
    recorded = candidate.successor_pose
    return (
        abs(successor.x - recorded.x) <= 1e-9
        and abs(successor.y - recorded.y) <= 1e-9
        and abs(wrap_angle(successor.theta - recorded.theta)) <= 1e-9
    )


def run_campaign(scenario: Scenario, params: SwarmParams, num_runs: int = 1) -> CampaignReport:
    """Run num_runs independent swarm searches with seeds seed, seed+1, ...

    target_value is pinned to 0.0: the searches stop at the first exact hit.
    A run whose best value reaches 0.0 contributes a Counterexample, which
    must pass validate; a validation failure means the objective and the
    simulator disagree, and that is raised, not reported. Runs that exhaust
    their iterations simply contribute no counterexample.
    """
    if num_runs < 1:
        raise ValueError("num_runs must be at least 1")

    evaluate = make_objective(scenario)
    base = replace(params, target_value=0.0)
    counterexamples: list[Counterexample] = []
    runs: list[SwarmResult] = []
    visited_states: list[tuple[StateEvaluation, ...]] = []
    wall_times: list[float] = []

    for index in range(num_runs):
        run_params = replace(base, seed=base.seed + index)
        started = time.perf_counter()
        result = pso_minimize(evaluate, scenario.bounds, run_params)
        wall_times.append(time.perf_counter() - started)
        runs.append(result)
        visited_states.append(
            tuple((SearchState.from_vector(position), value) for position, value in result.visited_log)
        )
        if result.best_value == 0.0:
            state = SearchState.from_vector(result.best_position)
            omega, successor = simulate_step(state, scenario)
            candidate = Counterexample(
                state=state,
                successor_pose=successor,
                omega_applied=omega,
                objective_value=result.best_value,
                seed=run_params.seed,
                evaluations_to_find=result.evaluations,
            )
            if not validate(candidate, scenario):
                raise RuntimeError(
                    f"run {index} produced a counterexample that failed re-simulation; "
                    "the objective and the simulator disagree"
                )
            counterexamples.append(candidate)

    return CampaignReport(
        scenario=scenario,
        params=base,
        counterexamples=tuple(counterexamples),
        runs=tuple(runs),
        visited_states=tuple(visited_states),
        wall_times=tuple(wall_times),
    )


def default_bounds(arena: Rect, rover: RoverParams) -> SearchSpace:
    """Search box spanning the whole arena: pose, turn rate, and target."""
    return SearchSpace(
        lower=(arena.x_min, arena.y_min, -math.pi, -rover.omega_max, arena.x_min, arena.y_min),
        upper=(arena.x_max, arena.y_max, math.pi, rover.omega_max, arena.x_max, arena.y_max),
    )


def corner_scenario() -> Scenario:
    """Benchmark world: a 4 m square arena with two rectangles forming an
    inside corner, where blended avoidance is known to cut turns short."""
    arena = Rect(0.0, 0.0, 4.0, 4.0)
    obstacle_map = ObstacleMap(
        arena=arena,
        obstacles=(Rect(1.5, 1.5, 2.5, 2.0), Rect(2.5, 1.5, 2.7, 3.0)),
    )
    rover = RoverParams()
    return Scenario(
        name="corner",
        map=obstacle_map,
        rover=rover,
        controller=ControllerParams(),
        bounds=default_bounds(arena, rover),
    )


BUILTIN_SCENARIOS: dict[str, Callable[[], Scenario]] = {
    "corner": corner_scenario,
}
