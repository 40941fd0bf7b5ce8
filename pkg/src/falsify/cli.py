"""Command-line front end for falsification campaigns.

Exit codes: 0 when at least one counterexample was found and validated,
1 when none were found, 2 on configuration errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

from .config import ConfigError, load_config
from .falsifier import BUILTIN_SCENARIOS, run_campaign, validate
from .report import counterexample_from_dict, emit_report

EXIT_FOUND = 0
EXIT_NONE_FOUND = 1
EXIT_CONFIG_ERROR = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="falsify",
        description="Search for one-step collision counterexamples of a rover controller.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run_cmd = commands.add_parser("run", help="run a falsification campaign")
    run_cmd.add_argument("--scenario", required=True, help="built-in scenario name or JSON config file path")
    run_cmd.add_argument("--runs", type=int, default=1, help="number of independent runs (default 1)")
    run_cmd.add_argument("--seed", type=int, default=None, help="base seed; overrides FALSIFY_SEED and the config")
    run_cmd.add_argument("--max-iters", type=int, default=None, help="iteration cap per run")
    run_cmd.add_argument("--swarm-size", type=int, default=None, help="particles per swarm")
    run_cmd.add_argument("--out", default="results", help="output directory (default ./results)")
    run_cmd.add_argument("--plots", action="store_true", help="also write one SVG plot per run")

    validate_cmd = commands.add_parser("validate", help="re-simulate counterexamples from a report")
    validate_cmd.add_argument("--report", required=True, help="counterexamples JSON file")
    validate_cmd.add_argument("--scenario", required=True, help="built-in scenario name or JSON config file path")

    commands.add_parser("scenarios", help="list built-in scenarios")
    return parser


def _resolve_seed(cli_seed: int | None) -> int | None:
    """--seed wins over FALSIFY_SEED; None keeps the config's seed."""
    if cli_seed is not None:
        return cli_seed
    env = os.environ.get("FALSIFY_SEED")
    if env is None:
        return None
    try:
        return int(env)
    except ValueError:
        raise ConfigError(f"FALSIFY_SEED must be an integer, got '{env}'") from None


def _cmd_run(args: argparse.Namespace) -> int:
    try:
        scenario, params = load_config(args.scenario)
        overrides = {}
        seed = _resolve_seed(args.seed)
        if seed is not None:
            overrides["seed"] = seed
        if args.max_iters is not None:
            overrides["max_iterations"] = args.max_iters
        if args.swarm_size is not None:
            overrides["swarm_size"] = args.swarm_size
        if overrides:
            params = replace(params, **overrides)
        if args.runs < 1:
            raise ConfigError("--runs must be at least 1")
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR

    report = run_campaign(scenario, params, args.runs)
    paths = emit_report(report, out_dir, plots=args.plots)

    base_seed = report.params.seed
    found_seeds = {c.seed for c in report.counterexamples}
    for index, (result, wall) in enumerate(zip(report.runs, report.wall_times)):
        run_seed = base_seed + index
        status = "counterexample found" if run_seed in found_seeds else "no counterexample"
        print(
            f"run {index}: seed {run_seed}, {result.evaluations} evaluations, "
            f"best J {result.best_value:.6g}, {status} ({wall:.2f} s)"
        )
    if report.counterexamples:
        print(f"{len(report.counterexamples)} counterexample(s) found in {args.runs} run(s)")
    else:
        print("no counterexamples found")
    for path in paths:
        print(f"wrote {path}")
    return EXIT_FOUND if report.counterexamples else EXIT_NONE_FOUND


def _cmd_validate(args: argparse.Namespace) -> int:
    try:
        scenario, _ = load_config(args.scenario)
        report_path = Path(args.report)
        try:
            text = report_path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"{report_path}: {exc}") from exc
        try:
            documents = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{report_path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
        if not isinstance(documents, list):
            raise ConfigError(f"{report_path}: expected a JSON array of counterexamples")
        try:
            candidates = [counterexample_from_dict(document) for document in documents]
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"{report_path}: malformed counterexample entry: {exc!r}") from exc
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR

    if not candidates:
        print("no counterexamples in report")
        return EXIT_NONE_FOUND

    failures = 0
    for index, (name, candidate) in enumerate(candidates):
        if name != scenario.name:
            print(f"counterexample {index}: scenario '{name}' does not match '{scenario.name}'")
            failures += 1
            continue
        if validate(candidate, scenario):
            print(f"counterexample {index}: valid")
        else:
            print(f"counterexample {index}: INVALID")
            failures += 1
    if failures:
        print(f"{failures} of {len(candidates)} counterexample(s) failed validation")
        return EXIT_NONE_FOUND
    print(f"all {len(candidates)} counterexample(s) validated")
    return EXIT_FOUND


def _cmd_scenarios(_: argparse.Namespace) -> int:
    for name in sorted(BUILTIN_SCENARIOS):
        print(name)
    return EXIT_FOUND


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {"run": _cmd_run, "validate": _cmd_validate, "scenarios": _cmd_scenarios}
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
