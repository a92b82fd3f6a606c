"""Command-line front-end tests: parsing, validation, exit codes, outputs.

main() is exercised in-process so exit codes and printed predicate lines
can be asserted without spawning an interpreter.
"""

import json

import numpy as np
import pytest

from relkura.cli import RunConfig, main, parse_config
from relkura.errors import ConfigError


# ----------------------------------------------------------------------
# parsing and validation
# ----------------------------------------------------------------------


def test_parse_config_defaults():
    cfg = parse_config(["--scenario", "simulate"])
    assert cfg == RunConfig(scenario="simulate")
    assert cfg.model == "relativistic"
    assert cfg.n == 10
    assert cfg.kappa == 1.0
    assert cfg.seed == 0
    assert cfg.out == "relkura-out"


def test_parse_config_requires_scenario():
    with pytest.raises(ConfigError) as excinfo:
        parse_config([])
    assert excinfo.value.field == "scenario"


def test_parse_config_rejects_unknown_flag():
    with pytest.raises(ConfigError) as excinfo:
        parse_config(["--scenario", "simulate", "--warp", "9"])
    assert excinfo.value.field == "--warp"


def test_parse_config_names_offending_field():
    cases = [
        (["--scenario", "simulate", "--dt", "-0.5"], "dt"),
        (["--scenario", "simulate", "--c", "0"], "c"),
        (["--scenario", "simulate", "--kappa", "-1"], "kappa"),
        (["--scenario", "simulate", "--n", "0"], "n"),
        (["--scenario", "simulate", "--model", "galilean"], "model"),
        (["--scenario", "simulate", "--t-final", "nan"], "t_final"),
    ]
    for argv, field in cases:
        with pytest.raises(ConfigError) as excinfo:
            parse_config(argv)
        assert excinfo.value.field == field, argv


def test_parse_config_file_with_flag_override(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"scenario": "simulate", "seed": 3, "t_final": 2.0}))
    cfg = parse_config(["--config", str(path), "--seed", "4"])
    assert cfg.scenario == "simulate"
    assert cfg.seed == 4  # flag wins
    assert cfg.t_final == 2.0


def test_parse_config_file_errors(tmp_path):
    with pytest.raises(ConfigError) as excinfo:
        parse_config(["--config", str(tmp_path / "missing.json")])
    assert excinfo.value.field == "config"

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError):
        parse_config(["--config", str(bad)])

    unknown = tmp_path / "unknown.json"
    unknown.write_text(json.dumps({"scenario": "simulate", "frobnicate": 1}))
    with pytest.raises(ConfigError) as excinfo:
        parse_config(["--config", str(unknown)])
    assert excinfo.value.field == "frobnicate"


def test_parse_config_vector_fields(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({
        "scenario": "simulate", "n": 2,
        "theta0": [0.2, -0.2], "omega": [0.0, 0.0],
    }))
    cfg = parse_config(["--config", str(path)])
    assert cfg.theta0 == [0.2, -0.2]

    mismatched = tmp_path / "mismatched.json"
    mismatched.write_text(json.dumps({
        "scenario": "simulate", "n": 3, "theta0": [0.2, -0.2],
    }))
    with pytest.raises(ConfigError) as excinfo:
        parse_config(["--config", str(mismatched)])
    assert excinfo.value.field == "theta0"


# ----------------------------------------------------------------------
# exit codes
# ----------------------------------------------------------------------


def test_main_exit_2_on_config_error(capsys):
    assert main([]) == 2
    assert "scenario" in capsys.readouterr().err
    assert main(["--scenario", "simulate", "--dt", "-0.5"]) == 2
    assert "dt" in capsys.readouterr().err


def test_main_exit_0_simulate_writes_outputs(tmp_path, capsys):
    code = main(["--scenario", "simulate", "--model", "rapidity", "--c", "2",
                 "--seed", "3", "--t-final", "2", "--out", str(tmp_path)])
    assert code == 0
    out = capsys.readouterr().out
    assert f"report: {tmp_path / 'report.json'}" in out
    payload = json.loads((tmp_path / "report.json").read_text())
    assert payload["scenario"] == "simulate"
    assert payload["config"]["model"] == "rapidity"
    assert payload["config"]["c"] == 2.0
    traj = np.loadtxt(tmp_path / "trajectory_rapidity.csv", delimiter=",", skiprows=1)
    assert traj.shape[1] == 21  # t + 10 phases + 10 velocities
    assert (tmp_path / "diagnostics_rapidity.csv").is_file()


def test_main_simulate_explicit_vectors(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({
        "scenario": "simulate", "model": "relativistic", "n": 2, "c": 1.0,
        "theta0": [0.2, -0.2], "omega": [0.0, 0.0],
        "t_final": 5.0, "out": str(tmp_path / "run"),
    }))
    assert main(["--config", str(path)]) == 0
    payload = json.loads((tmp_path / "run" / "report.json").read_text())
    assert payload["results"]["initial_phase_diameter"] == pytest.approx(0.4)
    assert payload["results"]["omega_diameter"] == 0.0
    # homogeneous pair contracts at about kappa * G'(0) = 0.5: D(5) ~ 0.4 e^-2.5
    assert payload["results"]["terminal_phase_diameter"] < 0.05


def test_main_admissibility_prints_predicate_lines(tmp_path, capsys):
    code = main(["--scenario", "admissibility", "--model", "proper-velocity",
                 "--c", "0.5", "--out", str(tmp_path)])
    assert code == 0
    out = capsys.readouterr().out
    for name in ("oddness", "strictly-increasing", "inverse-round-trip"):
        assert f"PASS {name}:" in out
    payload = json.loads((tmp_path / "report.json").read_text())
    assert payload["config"]["samples"] == 1001
    assert all(p["passed"] for p in payload["predicates"])


def test_main_compare_scenario(tmp_path, capsys):
    code = main(["--scenario", "compare", "--seed", "1", "--t-final", "6",
                 "--dt", "0.02", "--out", str(tmp_path)])
    assert code == 0
    assert "PASS relativistic-slowest-decay:" in capsys.readouterr().out
    payload = json.loads((tmp_path / "report.json").read_text())
    assert len(payload["data_files"]) == 8  # trajectory + diagnostics per kind


def test_main_exit_1_on_honest_predicate_failure(tmp_path, capsys):
    # coupling far below the frequency spread: no lock, predicates must fail
    code = main(["--scenario", "sync-check", "--model", "classical",
                 "--kappa", "0.05", "--seed", "2", "--t-final", "5",
                 "--out", str(tmp_path)])
    assert code == 1
    out = capsys.readouterr().out
    assert "FAIL diameter-trapping:" in out
    assert "FAIL terminal-frequency-sync:" in out
    payload = json.loads((tmp_path / "report.json").read_text())
    assert not all(p["passed"] for p in payload["predicates"])


def test_main_rcs_scenario_defaults(tmp_path):
    # rcs-check defaults to dt=1e-3, record_every=10; shorten the horizon
    code = main(["--scenario", "rcs-check", "--n", "4", "--t-final", "2",
                 "--seed", "13", "--out", str(tmp_path)])
    assert code == 0
    payload = json.loads((tmp_path / "report.json").read_text())
    assert payload["config"]["dt"] == 1e-3
    assert payload["config"]["record_every"] == 10
    assert (tmp_path / "trajectory_momentum.csv").is_file()
