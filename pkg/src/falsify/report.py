"""Campaign outputs: counterexample JSON, visited-state CSV, per-run SVG plots.

File contents are a pure function of the campaign report, so two campaigns
with identical configuration produce byte-identical JSON and CSV. Wall-clock
times stay in the in-memory report only.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Rectangle

from .falsifier import CampaignReport, Counterexample, Scenario, SearchState, StateEvaluation
from .plant import Pose

COUNTEREXAMPLES_FILE = "counterexamples.json"
VISITED_FILE = "visited.csv"
CSV_HEADER = ("run", "evaluation", "x", "y", "theta", "omega", "x_T", "y_T", "J")


def counterexample_to_dict(candidate: Counterexample, scenario_name: str) -> dict:
    state = candidate.state
    successor = candidate.successor_pose
    return {
        "scenario": scenario_name,
        "seed": candidate.seed,
        "state": {
            "x": state.x,
            "y": state.y,
            "theta": state.theta,
            "omega": state.omega,
            "x_T": state.x_T,
            "y_T": state.y_T,
        },
        "omega_applied": candidate.omega_applied,
        "successor": {"x": successor.x, "y": successor.y, "theta": successor.theta},
        "objective": candidate.objective_value,
        "evaluations": candidate.evaluations_to_find,
    }


def counterexample_from_dict(document: dict) -> tuple[str, Counterexample]:
    """Rebuild (scenario name, Counterexample) from the JSON schema."""
    state = document["state"]
    successor = document["successor"]
    candidate = Counterexample(
        state=SearchState(
            x=float(state["x"]),
            y=float(state["y"]),
            theta=float(state["theta"]),
            omega=float(state["omega"]),
            x_T=float(state["x_T"]),
            y_T=float(state["y_T"]),
        ),
        successor_pose=Pose(float(successor["x"]), float(successor["y"]), float(successor["theta"])),
        omega_applied=float(document["omega_applied"]),
        objective_value=float(document["objective"]),
        seed=int(document["seed"]),
        evaluations_to_find=int(document["evaluations"]),
    )
    return str(document["scenario"]), candidate


def _write_counterexamples(report: CampaignReport, path: Path) -> None:
    documents = [counterexample_to_dict(c, report.scenario.name) for c in report.counterexamples]
    with path.open("w", encoding="utf-8", newline="\n") as handle:
        json.dump(documents, handle, indent=2)
        handle.write("\n")


def _write_visited_csv(report: CampaignReport, path: Path) -> None:
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for run_index, evaluations in enumerate(report.visited_states):
            for eval_index, (state, value) in enumerate(evaluations):
                writer.writerow(
                    (run_index, eval_index, state.x, state.y, state.theta, state.omega, state.x_T, state.y_T, value)
                )


def _plot_run(
    scenario: Scenario,
    run_index: int,
    evaluations: tuple[StateEvaluation, ...],
    candidate: Counterexample | None,
    path: Path,
) -> None:
    arena = scenario.map.arena
    fig, ax = plt.subplots(figsize=(6.0, 6.0))
    ax.add_patch(
        Rectangle(
            (arena.x_min, arena.y_min),
            arena.width,
            arena.height,
            fill=False,
            edgecolor="black",
            linewidth=1.2,
            gid="arena",
        )
    )
    for index, rect in enumerate(scenario.map.obstacles):
        ax.add_patch(
            Rectangle(
                (rect.x_min, rect.y_min),
                rect.width,
                rect.height,
                facecolor="red",
                edgecolor="darkred",
                alpha=0.8,
                gid=f"obstacle-{index}",
            )
        )

    xs = [state.x for state, _ in evaluations]
    ys = [state.y for state, _ in evaluations]
    ax.plot(xs, ys, linestyle="none", marker=".", markersize=2.5, color="0.55", gid="visited", zorder=2)

    if candidate is not None:
        state = candidate.state
        ax.plot([state.x], [state.y], linestyle="none", marker="o", color="green", gid="initial-position", zorder=4)
        ax.plot([state.x_T], [state.y_T], linestyle="none", marker="o", color="black", gid="target", zorder=4)
        ax.plot(
            [candidate.successor_pose.x],
            [candidate.successor_pose.y],
            linestyle="none",
            marker="x",
            markersize=9.0,
            markeredgewidth=2.0,
            color="red",
            gid="counterexample-successor",
            zorder=5,
        )

    margin = 0.05 * max(arena.width, arena.height)
    ax.set_xlim(arena.x_min - margin, arena.x_max + margin)
    ax.set_ylim(arena.y_min - margin, arena.y_max + margin)
    ax.set_aspect("equal")
    ax.set_xlabel("x [m]")
    ax.set_ylabel("y [m]")
    found = "counterexample found" if candidate is not None else "no counterexample"
    ax.set_title(f"{scenario.name}, run {run_index}: {len(evaluations)} states visited, {found}")
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def emit_report(report: CampaignReport, out_dir: str | Path, plots: bool = False) -> list[Path]:
    """Write campaign outputs into out_dir; returns the paths written.

    Always writes counterexamples.json (JSON array, possibly empty, one object
    per counterexample) and visited.csv (header run,evaluation,x,y,theta,
    omega,x_T,y_T,J; one row per objective evaluation). With plots enabled,
    also writes run_XXX.svg per run showing the arena, red obstacle
    rectangles, gray visited states, and, when the run found a counterexample,
    its initial position (green), target (black), and successor (red cross).
    """
    directory = Path(out_dir)
    written: list[Path] = []

    json_path = directory / COUNTEREXAMPLES_FILE
    csv_path = directory / VISITED_FILE
    try:
        directory.mkdir(parents=True, exist_ok=True)
        _write_counterexamples(report, json_path)
        written.append(json_path)
        _write_visited_csv(report, csv_path)
        written.append(csv_path)

        if plots:
            base_seed = report.params.seed
            by_run = {c.seed - base_seed: c for c in report.counterexamples}
            for run_index, evaluations in enumerate(report.visited_states):
                svg_path = directory / f"run_{run_index:03d}.svg"
                # A fixed hash salt keeps matplotlib's generated ids stable.
                with matplotlib.rc_context({"svg.hashsalt": f"{report.scenario.name}-{run_index}"}):
                    _plot_run(report.scenario, run_index, evaluations, by_run.get(run_index), svg_path)
                written.append(svg_path)
    except OSError as exc:
        raise OSError(f"failed to write report file in {directory}: {exc}") from exc

    return written
