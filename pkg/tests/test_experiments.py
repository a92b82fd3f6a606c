"""Scenario-runner tests: sampling reproducibility, report structure,
and the checked predicates on fast configurations.

Full-length runs live in the acceptance suite; everything here is sized
to keep the loop fast while still exercising the real decision logic.
"""

import json
import math

import numpy as np
import pytest

from relkura import (
    RNG_ALGORITHM,
    SamplingSpec,
    classical,
    make_rng,
    relativistic,
    run_four_model_comparison,
    run_limit_scaling,
    run_rate_vs_c,
    run_rcs_crosscheck,
    run_sync_predicates,
    sample_ensemble,
    sample_protocol_ensemble,
)
from relkura.errors import DomainError


# ----------------------------------------------------------------------
# sampling
# ----------------------------------------------------------------------


def test_make_rng_is_reproducible_and_counter_based():
    a = make_rng(42).uniform(0.0, 1.0, 8)
    b = make_rng(42).uniform(0.0, 1.0, 8)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, make_rng(43).uniform(0.0, 1.0, 8))
    assert type(make_rng(0).bit_generator).__name__ == "Philox"
    assert RNG_ALGORITHM == "philox4x32-10"


def test_sample_ensemble_draw_order_is_frequencies_first():
    spec = SamplingSpec(seed=9, phase_interval=(-1.0, 1.0),
                        freq_interval=(-0.2, 0.2), n=6)
    theta0, omega = sample_ensemble(spec)
    gen = make_rng(9)
    assert np.array_equal(omega, gen.uniform(-0.2, 0.2, 6))
    assert np.array_equal(theta0, gen.uniform(-1.0, 1.0, 6))


def test_sample_ensemble_centering():
    spec = SamplingSpec(seed=9, phase_interval=(-1.0, 1.0),
                        freq_interval=(-0.2, 0.2), n=6)
    _, omega = sample_ensemble(spec, center_frequencies=True)
    assert abs(omega.mean()) < 1e-16


def test_sampling_spec_validation():
    with pytest.raises(DomainError):
        SamplingSpec(0, (1.0, -1.0), (0.0, 0.0), 4)
    with pytest.raises(DomainError):
        SamplingSpec(0, (0.0, 0.0), (0.2, -0.2), 4)
    with pytest.raises(DomainError):
        SamplingSpec(0, (0.0, 0.0), (0.0, 0.0), 0)


def test_sample_protocol_ensemble_window_tracks_realized_spread():
    theta0, omega, tstar = sample_protocol_ensemble(21, n=12, kappa=1.0)
    assert tstar == pytest.approx(math.asin(np.ptp(omega)), rel=1e-15)
    half = 0.5 * (math.pi - tstar)
    assert np.max(np.abs(theta0)) <= half
    assert np.ptp(theta0) < math.pi - tstar


def test_sample_protocol_ensemble_degenerate_interval():
    theta0, omega, tstar = sample_protocol_ensemble(21, n=5, freq_interval=(0.0, 0.0))
    assert np.array_equal(omega, np.zeros(5))
    assert tstar == 0.0
    assert np.max(np.abs(theta0)) <= 0.5 * math.pi


def test_sample_protocol_ensemble_explicit_halfwidth():
    theta0, _, _ = sample_protocol_ensemble(21, n=5, phase_halfwidth=0.1)
    assert np.max(np.abs(theta0)) <= 0.1


# ----------------------------------------------------------------------
# four-model comparison
# ----------------------------------------------------------------------


def test_four_model_comparison_full_kind_decays_slowest():
    report = run_four_model_comparison(5, t_final=6.0, dt=0.02)
    assert report.passed
    assert report.scenario == "compare"
    [pred] = report.predicates
    assert pred.name == "relativistic-slowest-decay"
    assert pred.margin > 0.0
    rates = report.results["decay_rates"]
    assert set(rates) == {"classical", "relativistic", "proper-velocity", "rapidity"}
    others = min(v["rate"] for k, v in rates.items() if k != "relativistic")
    assert rates["relativistic"]["rate"] < others
    assert report.results["snapshot_times"] == [0.0, 1.0, 2.0, 3.0]
    for kind, snaps in report.results["snapshots"].items():
        assert len(snaps) == 4
        assert len(snaps[0]) == 10


def test_four_model_comparison_shares_initial_data():
    report = run_four_model_comparison(5, t_final=6.0, dt=0.02)
    snaps = report.results["snapshots"]
    first = snaps["classical"][0]
    for kind in ("relativistic", "proper-velocity", "rapidity"):
        assert snaps[kind][0] == first


# ----------------------------------------------------------------------
# rate vs c
# ----------------------------------------------------------------------


def test_rate_vs_c_homogeneous_rates_match_linearized_theory():
    report = run_rate_vs_c(7, c_values=(1.0, 5.0), t_final=20.0, dt=0.02)
    assert report.passed
    names = [p.name for p in report.predicates]
    assert names == ["rate-non-decreasing-in-c", "largest-c-rate-near-classical"]
    rows = report.results["table"]
    # near full synchrony the decay rate approaches kappa * G'(0)
    assert rows[0]["fit"]["rate"] == pytest.approx(0.5, rel=0.02)       # c=1
    assert rows[1]["fit"]["rate"] == pytest.approx(25.0 / 26.0, rel=0.02)  # c=5
    assert rows[2]["label"] == "classical"
    assert rows[2]["fit"]["rate"] == pytest.approx(1.0, rel=0.02)


def test_rate_vs_c_includes_c5_c10_predicate_when_present():
    # t_final must let the slow c=0.5 run reach its asymptotic fit window
    report = run_rate_vs_c(7, c_values=(0.5, 1.0, 5.0, 10.0), t_final=25.0, dt=0.05)
    names = [p.name for p in report.predicates]
    assert "rate-c5-c10-within-10pct" in names
    assert report.passed


def test_rate_vs_c_heterogeneous_is_qualitative():
    report = run_rate_vs_c(7, c_values=(1.0, 2.0), homogeneous=False,
                           t_final=6.0, dt=0.02)
    assert report.predicates == []
    assert report.passed  # vacuously
    for row in report.results["table"]:
        assert row["transient_fit_qualitative"] is True
        assert "fit" not in row


def test_rate_vs_c_rejects_unsorted_c():
    with pytest.raises(DomainError):
        run_rate_vs_c(7, c_values=(2.0, 1.0), t_final=6.0)


# ----------------------------------------------------------------------
# classical-limit scaling
# ----------------------------------------------------------------------


def test_limit_scaling_zero_regime_quadratic_and_bounded():
    report = run_limit_scaling(11, c_values=(5.0, 10.0), t_final=6.0,
                               regimes=("zero",), checkpoint_times=(3.0, 6.0))
    assert report.passed
    names = {p.name for p in report.predicates}
    assert names == {"zero-scaling-c5-to-c10", "zero-bounded-c5", "zero-bounded-c10"}
    rows = report.results["tables"]["zero"]
    ratio = rows[0]["sup_l1"] / rows[1]["sup_l1"]
    assert 3.0 <= ratio <= 5.0
    for row in rows:
        assert row["c2_sup_l1"] == pytest.approx(row["c"] ** 2 * row["sup_l1"], rel=1e-15)
        assert set(row["checkpoints"]) == {"3", "6"}


def test_limit_scaling_skips_non_doubling_pairs():
    report = run_limit_scaling(11, c_values=(5.0, 15.0), t_final=3.0, regimes=("zero",))
    assert report.predicates == []


def test_limit_scaling_validates_inputs():
    with pytest.raises(DomainError):
        run_limit_scaling(11, c_values=(5.0, 4.0))
    with pytest.raises(DomainError):
        run_limit_scaling(11, regimes=("warp",))


# ----------------------------------------------------------------------
# synchronization predicates
# ----------------------------------------------------------------------


def test_sync_predicates_homogeneous_checks():
    report = run_sync_predicates(3, classical(), n=6, t_final=30.0, dt=0.02,
                                 omega=np.zeros(6))
    assert report.passed
    names = [p.name for p in report.predicates]
    assert names == ["diameter-never-expands", "exponential-envelope",
                     "terminal-frequency-sync", "terminal-pairwise-sines"]
    res = report.results
    assert res["homogeneous"] is True
    assert res["omega_diameter"] == 0.0
    d0 = res["initial_phase_diameter"]
    # classical rest slope is 1, so the guaranteed rate is the sinc factor
    assert res["predicted_rate"] == pytest.approx(math.sin(d0) / d0, rel=1e-12)


def test_sync_predicates_homogeneous_draw_uses_given_omega():
    # with omega supplied the generator draws only the phases
    report = run_sync_predicates(3, classical(), n=6, t_final=30.0, dt=0.02,
                                 omega=np.zeros(6))
    expected = make_rng(3).uniform(-0.5 * math.pi, 0.5 * math.pi, 6)
    assert report.results["initial_phase_diameter"] == pytest.approx(
        np.ptp(expected), rel=1e-15)


def test_sync_predicates_heterogeneous_trapping():
    report = run_sync_predicates(3, relativistic(1.0), n=6, t_final=30.0)
    assert report.passed
    names = [p.name for p in report.predicates]
    assert names == ["diameter-trapping", "terminal-frequency-sync"]
    res = report.results
    assert res["homogeneous"] is False
    assert res["hypothesis_kappa_gt_omega_diameter"] is True
    assert res["hypothesis_kappa_gt_omega_diameter_over_d0"] is True
    assert res["trap_entry_time"] is not None
    assert res["trap_bound"] > res["theta_star"]
    assert res["terminal_frequency_diameter"] < 1e-6


def test_sync_predicates_rejects_bad_omega_length():
    with pytest.raises(DomainError):
        run_sync_predicates(3, classical(), n=4, omega=np.zeros(5), t_final=1.0)


# ----------------------------------------------------------------------
# momentum-form cross-check
# ----------------------------------------------------------------------


def test_rcs_crosscheck_forms_agree():
    report = run_rcs_crosscheck(13, n=4, t_final=2.0)
    assert report.passed
    names = [p.name for p in report.predicates]
    assert names == ["phase-agreement", "frequency-conservation"]
    res = report.results
    assert res["max_phase_deviation"] < 1e-10
    assert res["max_conservation_residual"] < 1e-10
    assert res["induced_frequency_recovery"] < 1e-14


# ----------------------------------------------------------------------
# reports and files
# ----------------------------------------------------------------------


def test_report_json_round_trip(tmp_path):
    report = run_sync_predicates(3, classical(), n=6, t_final=5.0, dt=0.02,
                                 omega=np.zeros(6), out_dir=tmp_path)
    payload = json.loads((tmp_path / "report.json").read_text())
    assert payload["scenario"] == "sync-check"
    assert payload["seed"] == 3
    assert payload["rng"] == RNG_ALGORITHM
    assert set(payload) == {"scenario", "seed", "rng", "config", "results",
                            "predicates", "data_files"}
    for pred, live in zip(payload["predicates"], report.predicates):
        assert pred["name"] == live.name
        assert pred["passed"] == live.passed
    for name in payload["data_files"]:
        assert (tmp_path / name).is_file()
    assert "trajectory_classical.csv" in payload["data_files"]
    assert "diagnostics_classical.csv" in payload["data_files"]


def test_emitted_trajectory_files_parse(tmp_path):
    run_sync_predicates(3, relativistic(1.0), n=4, t_final=2.0, dt=0.02,
                        omega=np.zeros(4), out_dir=tmp_path)
    data = np.loadtxt(tmp_path / "trajectory_relativistic.csv",
                      delimiter=",", skiprows=1)
    assert data.shape[1] == 1 + 4 + 4
    diag = np.loadtxt(tmp_path / "diagnostics_relativistic.csv",
                      delimiter=",", skiprows=1)
    assert diag.shape[1] == 7
    assert data.shape[0] == diag.shape[0]


def test_thread_cap_does_not_change_results(monkeypatch):
    baseline = run_four_model_comparison(5, t_final=3.0, dt=0.02)
    monkeypatch.setenv("RELKURA_THREADS", "1")
    serial = run_four_model_comparison(5, t_final=3.0, dt=0.02)
    for kind in baseline.results["decay_rates"]:
        assert (serial.results["decay_rates"][kind]["rate"]
                == baseline.results["decay_rates"][kind]["rate"])
