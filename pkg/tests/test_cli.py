import json
import subprocess
import sys

import pytest

from falsify import SwarmParams, emit_report, run_campaign, scenario_to_config
from falsify.cli import EXIT_CONFIG_ERROR, EXIT_FOUND, EXIT_NONE_FOUND, main
from falsify.report import COUNTEREXAMPLES_FILE, VISITED_FILE

QUICK_FLAGS = ["--swarm-size", "30", "--max-iters", "60"]


@pytest.fixture(autouse=True)
def _isolated_env(monkeypatch):
    monkeypatch.delenv("FALSIFY_SEED", raising=False)


@pytest.fixture()
def corner_report_file(tmp_path, corner):
    """counterexamples.json from a short real campaign."""
    report = run_campaign(corner, SwarmParams(swarm_size=30, max_iterations=60, seed=42), num_runs=2)
    emit_report(report, tmp_path / "report")
    return tmp_path / "report" / COUNTEREXAMPLES_FILE


def _run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_run_writes_report_files(tmp_path, capsys):
    out = tmp_path / "results"
    code, stdout, _ = _run(
        ["run", "--scenario", "corner", "--seed", "42", "--runs", "2", *QUICK_FLAGS, "--out", str(out), "--plots"],
        capsys,
    )
    assert code == EXIT_FOUND
    assert (out / COUNTEREXAMPLES_FILE).is_file()
    assert (out / VISITED_FILE).is_file()
    assert (out / "run_000.svg").is_file()
    assert (out / "run_001.svg").is_file()
    assert "counterexample(s) found in 2 run(s)" in stdout
    assert stdout.count("wrote ") == 4


def test_run_without_plots_skips_svg(tmp_path, capsys):
    out = tmp_path / "results"
    code, stdout, _ = _run(
        ["run", "--scenario", "corner", "--seed", "42", *QUICK_FLAGS, "--out", str(out)], capsys
    )
    assert code == EXIT_FOUND
    assert not list(out.glob("*.svg"))
    assert "run 0: seed 42," in stdout


def test_run_reports_absence_of_counterexamples(tmp_path, capsys, empty_scenario):
    config = tmp_path / "empty.json"
    config.write_text(json.dumps(scenario_to_config(empty_scenario, SwarmParams(swarm_size=8, max_iterations=5))))
    out = tmp_path / "results"
    code, stdout, _ = _run(["run", "--scenario", str(config), "--out", str(out)], capsys)
    assert code == EXIT_NONE_FOUND
    assert "no counterexamples found" in stdout
    assert (out / COUNTEREXAMPLES_FILE).read_text() == "[]\n"


def test_run_rejects_bad_run_count(tmp_path, capsys):
    code, _, stderr = _run(
        ["run", "--scenario", "corner", "--runs", "0", "--out", str(tmp_path)], capsys
    )
    assert code == EXIT_CONFIG_ERROR
    assert "error:" in stderr


def test_run_rejects_unknown_scenario(tmp_path, capsys):
    code, _, stderr = _run(
        ["run", "--scenario", "does-not-exist", "--out", str(tmp_path)], capsys
    )
    assert code == EXIT_CONFIG_ERROR
    assert "corner" in stderr  # error names the available built-ins


def test_seed_env_var_matches_explicit_flag(tmp_path, capsys, monkeypatch):
    base = ["run", "--scenario", "corner", *QUICK_FLAGS]
    flag_out = tmp_path / "flag"
    _run([*base, "--seed", "7", "--out", str(flag_out)], capsys)

    monkeypatch.setenv("FALSIFY_SEED", "7")
    env_out = tmp_path / "env"
    _run([*base, "--out", str(env_out)], capsys)

    for name in (COUNTEREXAMPLES_FILE, VISITED_FILE):
        assert (flag_out / name).read_bytes() == (env_out / name).read_bytes()


def test_seed_flag_overrides_env_var(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("FALSIFY_SEED", "7")
    out = tmp_path / "results"
    _, stdout, _ = _run(
        ["run", "--scenario", "corner", "--seed", "9", *QUICK_FLAGS, "--out", str(out)], capsys
    )
    assert "run 0: seed 9," in stdout


def test_malformed_seed_env_var_is_a_config_error(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("FALSIFY_SEED", "abc")
    code, _, stderr = _run(["run", "--scenario", "corner", "--out", str(tmp_path)], capsys)
    assert code == EXIT_CONFIG_ERROR
    assert "FALSIFY_SEED" in stderr


def test_validate_accepts_real_report(corner_report_file, capsys):
    code, stdout, _ = _run(
        ["validate", "--report", str(corner_report_file), "--scenario", "corner"], capsys
    )
    assert code == EXIT_FOUND
    assert "counterexample(s) validated" in stdout


def test_validate_flags_tampered_state(corner_report_file, capsys):
    documents = json.loads(corner_report_file.read_text())
    documents[0]["state"]["x"] += 0.3
    corner_report_file.write_text(json.dumps(documents))
    code, stdout, _ = _run(
        ["validate", "--report", str(corner_report_file), "--scenario", "corner"], capsys
    )
    assert code == EXIT_NONE_FOUND
    assert "INVALID" in stdout


def test_validate_empty_report(tmp_path, capsys):
    path = tmp_path / "report.json"
    path.write_text("[]")
    code, stdout, _ = _run(["validate", "--report", str(path), "--scenario", "corner"], capsys)
    assert code == EXIT_NONE_FOUND
    assert "no counterexamples in report" in stdout


def test_validate_missing_report_file(tmp_path, capsys):
    code, _, stderr = _run(
        ["validate", "--report", str(tmp_path / "absent.json"), "--scenario", "corner"], capsys
    )
    assert code == EXIT_CONFIG_ERROR
    assert "error:" in stderr


def test_validate_scenario_name_mismatch(tmp_path, corner_report_file, capsys, empty_scenario):
    config = tmp_path / "empty.json"
    config.write_text(json.dumps(scenario_to_config(empty_scenario)))
    code, stdout, _ = _run(
        ["validate", "--report", str(corner_report_file), "--scenario", str(config)], capsys
    )
    assert code == EXIT_NONE_FOUND
    assert "does not match" in stdout


def test_scenarios_lists_builtins(capsys):
    code, stdout, _ = _run(["scenarios"], capsys)
    assert code == EXIT_FOUND
    assert "corner" in stdout.splitlines()


def test_module_entry_point():
    completed = subprocess.run(
        [sys.executable, "-m", "falsify", "scenarios"], capture_output=True, text=True
    )
    assert completed.returncode == 0
    assert "corner" in completed.stdout
