"""Seed-deterministic global-best particle swarm optimization over a box.

The swarm minimizes an arbitrary objective on a box-bounded real vector
space and stops as soon as any single evaluation reaches the target value,
mid-iteration if that is where it happens. Every objective call is recorded
in a visited log so callers can reconstruct the full search trace.

Determinism contract: identical (objective, space, params) produce a
bit-identical SwarmResult. Each particle owns its own random stream spawned
from the seed, so results do not depend on evaluation order and would be
unchanged under concurrent evaluation of one iteration. Ties between equal
best values are broken toward the earlier evaluation (lowest particle index)
because updates use strict comparison in index order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

ObjectiveFn = Callable[[np.ndarray], float]

# One evaluated point: (position, objective value).
Evaluation = tuple[tuple[float, ...], float]


@dataclass(frozen=True)
class SearchSpace:
    """Axis-aligned box of feasible positions."""

    lower: tuple[float, ...]
    upper: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "lower", tuple(float(v) for v in self.lower))
        object.__setattr__(self, "upper", tuple(float(v) for v in self.upper))
        if len(self.lower) != len(self.upper):
            raise ValueError("lower and upper must have the same length")
        if not self.lower:
            raise ValueError("search space needs at least one dimension")
        for lo, hi in zip(self.lower, self.upper):
            if not lo < hi:
                raise ValueError(f"each lower bound must be below its upper bound, got [{lo}, {hi}]")

    @property
    def dimension(self) -> int:
        return len(self.lower)


@dataclass(frozen=True)
class SwarmParams:
    """Swarm configuration, including the seed that fixes the whole run."""

    swarm_size: int = 60
    max_iterations: int = 300
    inertia_weight: float = 0.7298
    cognitive_coefficient: float = 1.49618
    social_coefficient: float = 1.49618
    target_value: float = -math.inf
    max_velocity_fraction: float = 0.2
    seed: int = 0

    def __post_init__(self) -> None:
        if self.swarm_size < 2:
            raise ValueError("swarm_size must be at least 2")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if self.inertia_weight < 0 or self.cognitive_coefficient < 0 or self.social_coefficient < 0:
            raise ValueError("inertia_weight, cognitive_coefficient and social_coefficient must be nonnegative")
        if not 0 < self.max_velocity_fraction <= 1:
            raise ValueError("max_velocity_fraction must lie in (0, 1]")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")


@dataclass(eq=False)
class Particle:
    """Mutable per-particle state; arrays are owned, never aliased."""

    position: np.ndarray
    velocity: np.ndarray
    personal_best_position: np.ndarray
    personal_best_value: float


@dataclass(frozen=True)
class SwarmResult:
    """Outcome of one pso_minimize call."""

    best_position: tuple[float, ...]
    best_value: float
    iterations_used: int
    terminated_early: bool
    evaluations: int
    visited_log: tuple[Evaluation, ...] = field(repr=False)


def spawn_particle_rngs(seed: int, swarm_size: int) -> list[np.random.Generator]:
    """Derive one independent random stream per particle from a single seed."""
    children = np.random.SeedSequence(int(seed)).spawn(swarm_size)
    return [np.random.default_rng(child) for child in children]


def init_swarm(
    space: SearchSpace,
    params: SwarmParams,
    rngs: Sequence[np.random.Generator],
) -> list[Particle]:
    """Sample the starting swarm uniformly over the box.

    rngs holds one generator per particle (see spawn_particle_rngs). Each
    particle draws its position and then its velocity from its own stream.
    Personal best values start at +inf because nothing has been evaluated yet;
    pso_minimize scores the initial positions before the first step.
    """
    lower = np.asarray(space.lower)
    upper = np.asarray(space.upper)
    velocity_cap = params.max_velocity_fraction * (upper - lower)
    particles = []
    for index in range(params.swarm_size):
        rng = rngs[index]
        position = rng.uniform(lower, upper)
        velocity = rng.uniform(-velocity_cap, velocity_cap)
        particles.append(Particle(position, velocity, position.copy(), math.inf))
    return particles


def _evaluate(objective: ObjectiveFn, position: np.ndarray) -> float:
    # Non-finite objective values (nan, +/-inf) act as +inf: recorded but
    # never selected as a best.
    value = float(objective(position.copy()))
    return value if math.isfinite(value) else math.inf


def step_swarm(
    particles: list[Particle],
    global_best: tuple[float, np.ndarray],
    space: SearchSpace,
    params: SwarmParams,
    objective: ObjectiveFn,
    rngs: Sequence[np.random.Generator],
    visited: list[Evaluation],
) -> tuple[list[Particle], tuple[float, np.ndarray], bool]:
    """Advance the swarm one iteration.

    All particles move first, attracted by the iteration-start global best;
    then positions are evaluated in particle index order. Evaluation stops
    immediately once a value reaches params.target_value, so later particles
    keep their moved position but a stale personal best. Returns the particle
    list, the new (value, position) global best, and whether the target was
    reached.
    """
    lower = np.asarray(space.lower)
    upper = np.asarray(space.upper)
    velocity_cap = params.max_velocity_fraction * (upper - lower)
    best_value, best_position = global_best

    for particle, rng in zip(particles, rngs):
        r1 = rng.random(space.dimension)
        r2 = rng.random(space.dimension)
        velocity = (
            params.inertia_weight * particle.velocity
            + params.cognitive_coefficient * r1 * (particle.personal_best_position - particle.position)
            + params.social_coefficient * r2 * (best_position - particle.position)
        )
        velocity = np.clip(velocity, -velocity_cap, velocity_cap)
        position = particle.position + velocity
        # Clamping a coordinate to the wall also kills its velocity so the
        # particle does not keep pushing outward.
        out = (position < lower) | (position > upper)
        velocity[out] = 0.0
        particle.position = np.clip(position, lower, upper)
        particle.velocity = velocity

    for particle in particles:
        value = _evaluate(objective, particle.position)
        visited.append((tuple(float(x) for x in particle.position), value))
        if value < particle.personal_best_value:
            particle.personal_best_value = value
            particle.personal_best_position = particle.position.copy()
        if value < best_value:
            best_value = value
            best_position = particle.position.copy()
        if value <= params.target_value:
            return particles, (best_value, best_position), True

    return particles, (best_value, best_position), False


def pso_minimize(objective: ObjectiveFn, space: SearchSpace, params: SwarmParams) -> SwarmResult:
    """Minimize objective over the box, stopping early at the target value.

    The initial swarm counts as iteration 0: its positions are evaluated
    before any movement, and a hit there reports iterations_used = 0.
    """
    rngs = spawn_particle_rngs(params.seed, params.swarm_size)
    particles = init_swarm(space, params, rngs)

    visited: list[Evaluation] = []
    best_value = math.inf
    best_position: np.ndarray | None = None
    iterations_used = 0
    terminated_early = False

    for particle in particles:
        value = _evaluate(objective, particle.position)
        visited.append((tuple(float(x) for x in particle.position), value))
        particle.personal_best_value = value
        if best_position is None or value < best_value:
            best_value = value
            best_position = particle.position.copy()
        if value <= params.target_value:
            terminated_early = True
            break

    if not terminated_early:
        global_best = (best_value, best_position)
        for iteration in range(1, params.max_iterations + 1):
            particles, global_best, reached = step_swarm(
                particles, global_best, space, params, objective, rngs, visited
            )
            iterations_used = iteration
            if reached:
                terminated_early = True
                break
        best_value, best_position = global_best

    assert best_position is not None
    return SwarmResult(
        best_position=tuple(float(x) for x in best_position),
        best_value=float(best_value),
        iterations_used=iterations_used,
        terminated_early=terminated_early,
        evaluations=len(visited),
        visited_log=tuple(visited),
    )
