"""End-to-end acceptance checks, one test per release criterion.

Each test prints a single PASS/FAIL line (visible with `pytest -s`) and then
asserts, so a full run doubles as a readable acceptance report.
"""

import csv
import math
import time
import xml.etree.ElementTree as ElementTree
from pathlib import Path

import numpy as np
import pytest

from falsify import (
    Pose,
    SearchSpace,
    SearchState,
    SwarmParams,
    corner_scenario,
    is_collision,
    min_distance_to_obstacles,
    objective,
    pso_minimize,
    run_campaign,
    step_unicycle,
    validate,
    wrap_angle,
)
from falsify.geometry import ObstacleMap, Rect
from falsify.report import COUNTEREXAMPLES_FILE, VISITED_FILE, emit_report
from oracles import boundary_distance, euler_step, one_step_collides

CAMPAIGN_PARAMS = SwarmParams(swarm_size=60, max_iterations=300, seed=42)
CAMPAIGN_RUNS = 4


def _verdict(number: int, label: str, ok: bool, details: str) -> str:
    line = f"criterion {number} ({label}): {'PASS' if ok else 'FAIL'} ({details})"
    print(line)
    return line


@pytest.fixture(scope="module")
def campaign(tmp_path_factory):
    """One full campaign on the corner scenario, emitted with plots."""
    scenario = corner_scenario()
    report = run_campaign(scenario, CAMPAIGN_PARAMS, num_runs=CAMPAIGN_RUNS)
    out_dir = tmp_path_factory.mktemp("acceptance_report")
    emit_report(report, out_dir, plots=True)
    return scenario, report, out_dir


def _csv_rows_by_run(path: Path) -> dict[int, int]:
    counts: dict[int, int] = {}
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        next(reader)  # header
        for row in reader:
            run = int(row[0])
            counts[run] = counts.get(run, 0) + 1
    return counts


def test_criterion_1_objective_zero_iff_resimulated_collision():
    scenario = corner_scenario()
    lower = np.asarray(scenario.bounds.lower)
    upper = np.asarray(scenario.bounds.upper)
    rng = np.random.default_rng(99)

    start = time.perf_counter()
    checked = 0
    zeros = 0
    mismatches = 0
    while checked < 10_000:
        batch = rng.uniform(lower, upper, size=(4096, 6))
        for row in batch:
            if checked == 10_000:
                break
            if is_collision((row[0], row[1]), scenario.rover.radius, scenario.map):
                continue
            state = SearchState.from_vector(row)
            claimed = objective(state, scenario) == 0.0
            actual = one_step_collides(state, scenario)
            zeros += claimed
            mismatches += claimed != actual
            checked += 1
    elapsed = time.perf_counter() - start

    ok = mismatches == 0 and elapsed < 10.0
    line = _verdict(
        1,
        "objective soundness",
        ok,
        f"{checked} safe states, {zeros} with J=0, {mismatches} mismatches, {elapsed:.2f} s",
    )
    assert ok, line


def test_criterion_2_campaign_finds_validated_counterexamples(campaign):
    scenario, report, _ = campaign
    validated = sum(validate(candidate, scenario) for candidate in report.counterexamples)
    slowest = max(report.wall_times)
    ok = validated >= 3 and slowest < 60.0
    line = _verdict(
        2,
        "corner campaign",
        ok,
        f"{validated} of {CAMPAIGN_RUNS} runs validated, slowest run {slowest:.2f} s",
    )
    assert ok, line


def test_criterion_3_counterexamples_are_pairwise_distinct(campaign):
    _, report, _ = campaign
    states = [candidate.state.as_vector() for candidate in report.counterexamples]
    smallest_gap = math.inf
    for i in range(len(states)):
        for j in range(i + 1, len(states)):
            gap = max(abs(a - b) for a, b in zip(states[i], states[j]))
            smallest_gap = min(smallest_gap, gap)
    ok = len(states) >= 2 and smallest_gap > 1e-6
    line = _verdict(
        3,
        "distinctness",
        ok,
        f"{len(states)} counterexamples, smallest pairwise gap {smallest_gap:.3g}",
    )
    assert ok, line


def test_criterion_4_sphere_regression():
    space = SearchSpace(lower=(-5.0,) * 6, upper=(5.0,) * 6)

    def sphere(x: np.ndarray) -> float:
        return float(np.dot(x, x))

    start = time.perf_counter()
    hits = 0
    worst = 0.0
    for seed in range(100):
        params = SwarmParams(
            swarm_size=60, max_iterations=200, target_value=1e-5, seed=seed
        )
        result = pso_minimize(sphere, space, params)
        hits += result.best_value < 1e-4
        worst = max(worst, result.best_value)
    elapsed = time.perf_counter() - start

    ok = hits >= 95 and elapsed < 30.0
    line = _verdict(
        4,
        "sphere benchmark",
        ok,
        f"{hits}/100 seeds below 1e-4, worst best value {worst:.3g}, {elapsed:.2f} s",
    )
    assert ok, line


def test_criterion_5_closed_form_step_matches_euler_integration():
    quarter = step_unicycle(Pose(0.0, 0.0, 0.0), 1.0, math.pi / 2, 1.0)
    quarter_err = max(
        abs(quarter.x - 2 / math.pi),
        abs(quarter.y - 2 / math.pi),
        abs(wrap_angle(quarter.theta - math.pi / 2)),
    )

    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(1000):
        x, y = rng.uniform(-1.0, 1.0, size=2)
        theta = rng.uniform(-math.pi, math.pi)
        v = rng.uniform(0.05, 1.0)
        omega = rng.uniform(-4.0, 4.0)
        dt = rng.uniform(0.005, 0.1)
        stepped = step_unicycle(Pose(x, y, theta), v, omega, dt)
        ex, ey, etheta = euler_step(x, y, theta, v, omega, dt)
        worst = max(
            worst,
            abs(stepped.x - ex),
            abs(stepped.y - ey),
            abs(wrap_angle(stepped.theta - etheta)),
        )

    ok = worst < 1e-5 and quarter_err < 1e-9
    line = _verdict(
        5,
        "unicycle kinematics",
        ok,
        f"max deviation {worst:.3g} over 1000 inputs, quarter-turn error {quarter_err:.3g}",
    )
    assert ok, line


def test_criterion_6_distance_matches_boundary_sampling():
    rng = np.random.default_rng(13)
    arena = Rect(0.0, 0.0, 4.0, 4.0)
    worst = 0.0
    for _ in range(1000):
        obstacles = []
        for _ in range(int(rng.integers(1, 4))):
            x0 = rng.uniform(0.2, 3.0)
            y0 = rng.uniform(0.2, 3.0)
            obstacles.append(
                Rect(x0, y0, x0 + rng.uniform(0.05, 0.8), y0 + rng.uniform(0.05, 0.8))
            )
        world = ObstacleMap(arena=arena, obstacles=tuple(obstacles))
        point = tuple(rng.uniform(0.0, 4.0, size=2))
        radius = rng.uniform(0.0, 0.2)
        got = min_distance_to_obstacles(point, world, radius)
        want = boundary_distance(point, world, radius, spacing=1e-3)
        worst = max(worst, abs(got - want))

    ok = worst < 1e-3
    line = _verdict(6, "distance field", ok, f"max deviation {worst:.3g} over 1000 pairs")
    assert ok, line


def test_criterion_7_repeated_campaigns_emit_identical_bytes(campaign, tmp_path):
    scenario, _, out_dir = campaign
    repeat = run_campaign(scenario, CAMPAIGN_PARAMS, num_runs=CAMPAIGN_RUNS)
    emit_report(repeat, tmp_path)

    same = {
        name: (out_dir / name).read_bytes() == (tmp_path / name).read_bytes()
        for name in (COUNTEREXAMPLES_FILE, VISITED_FILE)
    }
    ok = all(same.values())
    line = _verdict(
        7,
        "determinism",
        ok,
        ", ".join(f"{name} {'identical' if match else 'DIFFERS'}" for name, match in same.items()),
    )
    assert ok, line


def test_criterion_8_no_evaluations_after_first_hit(campaign):
    _, report, _ = campaign
    overshoots = 0
    hits = 0
    for result in report.runs:
        values = [value for _, value in result.visited_log]
        if 0.0 in values:
            hits += 1
            overshoots += values.index(0.0) != len(values) - 1
    ok = overshoots == 0 and hits > 0
    line = _verdict(
        8,
        "early stop",
        ok,
        f"{hits} runs hit J=0, {overshoots} kept evaluating afterwards",
    )
    assert ok, line


def test_criterion_9_svg_structure_matches_report(campaign):
    scenario, report, out_dir = campaign
    rows_by_run = _csv_rows_by_run(out_dir / VISITED_FILE)
    found_runs = {candidate.seed - report.params.seed for candidate in report.counterexamples}

    problems = []
    for run in range(CAMPAIGN_RUNS):
        root = ElementTree.parse(out_dir / f"run_{run:03d}.svg").getroot()
        groups: dict[str, list[ElementTree.Element]] = {}
        for element in root.iter():
            gid = element.get("id")
            if gid:
                groups.setdefault(gid, []).append(element)

        def count(gid: str, tag: str) -> int:
            elements = groups.get(gid, [])
            return sum(
                1
                for group in elements
                for child in group.iter()
                if child.tag.endswith("}" + tag)
            )

        if sum(1 for gid in groups if gid.startswith("obstacle-")) != len(scenario.map.obstacles):
            problems.append(f"run {run}: obstacle group count")
        for index in range(len(scenario.map.obstacles)):
            if count(f"obstacle-{index}", "path") != 1:
                problems.append(f"run {run}: obstacle-{index} path count")
        if count("visited", "use") != rows_by_run.get(run, 0):
            problems.append(f"run {run}: visited markers != {rows_by_run.get(run, 0)} CSV rows")
        if run in found_runs and count("counterexample-successor", "use") != 1:
            problems.append(f"run {run}: missing counterexample marker")

    ok = not problems
    line = _verdict(
        9,
        "plot structure",
        ok,
        "all SVGs consistent with CSV" if ok else "; ".join(problems),
    )
    assert ok, line
