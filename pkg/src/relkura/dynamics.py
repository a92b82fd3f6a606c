"""Fixed-step integration of the coupled-oscillator family.

Two equivalent formulations are provided.  The first-order form evolves
phases directly: each oscillator's phase velocity is the inverse response
applied to its natural frequency plus the all-to-all sine coupling.  The
momentum form evolves the pair (theta, p) with p the drive-valued
momentum variable; it is the second-order formulation the bounded-velocity
models descend from, and serves to cross-validate the first-order
integrator (the residual p_i - coupling_i - nu_i is a conserved quantity
of the exact flow).

Conventions that matter for downstream analysis:

* Phases live on the real line and are never wrapped modulo 2*pi.
  Diameters, l1 comparisons between models, and the potential would all
  be corrupted by wrapping.
* Integration is fixed-step classical RK4.  The final step is shortened
  so every trajectory lands exactly on t_final, and recorded times are
  computed as step * dt rather than accumulated, so sample grids are
  bit-identical across models with the same (dt, t_final, record_every).
* Recorded phase velocities are evaluated from the recorded phases in
  one vectorized pass after integration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .models import FrequencyResponse

__all__ = [
    "SystemConfig",
    "PhaseState",
    "MomentumState",
    "Trajectory",
    "MomentumTrajectory",
    "coupling",
    "rhs",
    "rk4_step",
    "simulate",
    "momentum_rhs",
    "simulate_momentum",
    "induced_frequencies",
    "write_trajectory_csv",
]


@dataclass(frozen=True)
class SystemConfig:
    """Immutable description of one oscillator system and its time grid.

    ``omega`` holds the natural frequencies (length ``n``); ``record_every``
    keeps every k-th step in the trajectory (the initial and final states
    are always kept).
    """

    n: int
    kappa: float
    omega: np.ndarray
    model: FrequencyResponse
    dt: float
    t_final: float
    record_every: int = 1

    def __post_init__(self):
        om = np.array(self.omega, dtype=float).reshape(-1)
        om.setflags(write=False)
        object.__setattr__(self, "omega", om)
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if om.shape != (self.n,):
            raise ValueError(f"omega must have length n={self.n}, got {om.shape}")
        if not np.all(np.isfinite(om)):
            raise ValueError("omega entries must be finite")
        if not (self.kappa >= 0.0 and math.isfinite(self.kappa)):
            raise ValueError("kappa must be finite and >= 0")
        if not (self.dt > 0.0 and math.isfinite(self.dt)):
            raise ValueError("dt must be finite and > 0")
        if not (self.t_final >= self.dt and math.isfinite(self.t_final)):
            raise ValueError("t_final must be finite and >= dt")
        if self.record_every < 1:
            raise ValueError("record_every must be >= 1")


@dataclass(frozen=True)
class PhaseState:
    """Phases at one instant."""

    t: float
    theta: np.ndarray


@dataclass(frozen=True)
class MomentumState:
    """Phases and momentum-like drives at one instant."""

    t: float
    theta: np.ndarray
    p: np.ndarray


@dataclass(frozen=True)
class Trajectory:
    """Recorded first-order run: times (M,), phases and velocities (M, n).

    ``partial`` is set when integration aborted; the arrays then hold the
    samples recorded before the failure.
    """

    config: SystemConfig
    times: np.ndarray
    thetas: np.ndarray
    theta_dots: np.ndarray
    partial: bool = False

    def write_csv(self, path) -> None:
        write_trajectory_csv(self, path)


@dataclass(frozen=True)
class MomentumTrajectory:
    """Recorded momentum-form run.

    ``residuals`` holds p_i(t) - coupling_i(t) - nu_i per sample, the
    conservation defect of the induced frequencies; ``induced_omega`` the
    frequencies recovered from the initial data.
    """

    config: SystemConfig
    times: np.ndarray
    thetas: np.ndarray
    momenta: np.ndarray
    theta_dots: np.ndarray
    residuals: np.ndarray
    induced_omega: np.ndarray
    partial: bool = False

    def write_csv(self, path) -> None:
        write_trajectory_csv(self, path)


def coupling(config: SystemConfig, theta: np.ndarray) -> np.ndarray:
    """All-to-all sine coupling (kappa/n) * sum_j sin(theta_j - theta_i)."""
    th = np.asarray(theta, dtype=float)
    diff = th[None, :] - th[:, None]  # [i, j] = theta_j - theta_i
    return (config.kappa / config.n) * np.sin(diff).sum(axis=1)


def rhs(config: SystemConfig, theta: np.ndarray) -> np.ndarray:
    """Phase velocities for the first-order form at the given phases."""
    return config.model.velocity(config.omega + coupling(config, theta))


def _advance(config: SystemConfig, theta: np.ndarray, dt: float) -> np.ndarray:
    k1 = rhs(config, theta)
    k2 = rhs(config, theta + 0.5 * dt * k1)
    k3 = rhs(config, theta + 0.5 * dt * k2)
    k4 = rhs(config, theta + dt * k3)
    return theta + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def rk4_step(config: SystemConfig, state: PhaseState) -> PhaseState:
    """One classical RK4 step of length config.dt."""
    theta = np.asarray(state.theta, dtype=float)
    return PhaseState(state.t + config.dt, _advance(config, theta, config.dt))


def _step_plan(dt: float, t_final: float) -> tuple[int, float]:
    """Number of full steps plus the closing fractional step (0 if none)."""
    n_full = int(math.floor(t_final / dt + 1e-9))
    rem = t_final - n_full * dt
    if rem <= 1e-9 * dt:
        rem = 0.0
    return n_full, rem


def _check_initial_phases(config: SystemConfig, theta0) -> np.ndarray:
    th = np.array(theta0, dtype=float).reshape(-1)
    if th.shape != (config.n,):
        raise ValueError(f"theta0 must have length n={config.n}")
    if not np.all(np.isfinite(th)):
        raise ValueError("theta0 entries must be finite")
    return th


def _recorded_velocities(config: SystemConfig, thetas: np.ndarray) -> np.ndarray:
    diff = thetas[:, None, :] - thetas[:, :, None]  # [m, i, j] = theta_j - theta_i
    drives = config.omega[None, :] + (config.kappa / config.n) * np.sin(diff).sum(axis=2)
    return config.model.velocity(drives)


def simulate(config: SystemConfig, theta0) -> Trajectory:
    """Integrate the first-order form from theta0 over the config time grid.

    Records every ``record_every``-th step plus the initial and final
    states.  If the model evaluation fails mid-run the error propagates
    with the samples recorded so far attached as ``partial_trajectory``.
    """
    th = _check_initial_phases(config, theta0)
    n_full, rem = _step_plan(config.dt, config.t_final)
    times = [0.0]
    thetas = [th.copy()]
    try:
        for step in range(1, n_full + 1):
            th = _advance(config, th, config.dt)
            if step % config.record_every == 0 and not (step == n_full and rem == 0.0):
                times.append(step * config.dt)
                thetas.append(th.copy())
        if rem > 0.0:
            th = _advance(config, th, rem)
        times.append(config.t_final)
        thetas.append(th.copy())
    except (DomainError, ConvergenceError) as err:
        err.partial_trajectory = _assemble(config, times, thetas, partial=True)
        raise
    return _assemble(config, times, thetas, partial=False)


def _assemble(config, times, thetas, partial: bool) -> Trajectory:
    stamps = np.asarray(times, dtype=float)
    phases = np.vstack(thetas)
    try:
        vels = _recorded_velocities(config, phases)
    except (DomainError, ConvergenceError):
        # Only reachable on the abort path, where the model already failed.
        vels = np.full_like(phases, np.nan)
    return Trajectory(config, stamps, phases, vels, partial=partial)


# ----------------------------------------------------------------------
# momentum form
# ----------------------------------------------------------------------


def momentum_rhs(config: SystemConfig, state: MomentumState) -> tuple[np.ndarray, np.ndarray]:
    """Time derivatives (theta_dot, p_dot) of the momentum form.

    Supported for all kinds; for the classical kind it reduces to the
    usual second-order phase model with unit inertia.
    """
    theta = np.asarray(state.theta, dtype=float)
    p = np.asarray(state.p, dtype=float)
    v = config.model.velocity(p)
    return v, _momentum_coupling(config, theta, v)


def _momentum_coupling(config, theta, v):
    diff = theta[None, :] - theta[:, None]  # [i, j] = theta_j - theta_i
    rel = v[None, :] - v[:, None]           # [i, j] = v_j - v_i
    return (config.kappa / config.n) * (np.cos(diff) * rel).sum(axis=1)


def _pair_rates(config, theta, p):
    v = config.model.velocity(p)
    return v, _momentum_coupling(config, theta, v)


def _advance_pair(config, theta, p, dt):
    k1t, k1p = _pair_rates(config, theta, p)
    k2t, k2p = _pair_rates(config, theta + 0.5 * dt * k1t, p + 0.5 * dt * k1p)
    k3t, k3p = _pair_rates(config, theta + 0.5 * dt * k2t, p + 0.5 * dt * k2p)
    k4t, k4p = _pair_rates(config, theta + dt * k3t, p + dt * k3p)
    theta_next = theta + (dt / 6.0) * (k1t + 2.0 * k2t + 2.0 * k3t + k4t)
    p_next = p + (dt / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
    return theta_next, p_next


def _check_initial_velocities(config: SystemConfig, thetadot0) -> np.ndarray:
    td = np.array(thetadot0, dtype=float).reshape(-1)
    if td.shape != (config.n,):
        raise ValueError(f"thetadot0 must have length n={config.n}")
    bound = config.model.velocity_bound
    if not np.all(np.isfinite(td)) or np.any(np.abs(td) >= bound):
        raise DomainError(f"initial velocities must satisfy |thetadot| < {bound}")
    return td


def induced_frequencies(config: SystemConfig, theta0, thetadot0) -> np.ndarray:
    """Natural frequencies consistent with the given initial phases and velocities.

    nu_i = F(thetadot_i(0)) - coupling_i(0).  The momentum form conserves
    these exactly along the flow, which is what the recorded residuals
    measure.
    """
    th = _check_initial_phases(config, theta0)
    td = _check_initial_velocities(config, thetadot0)
    return config.model.momentum(td) - coupling(config, th)


def simulate_momentum(config: SystemConfig, theta0, thetadot0) -> MomentumTrajectory:
    """Integrate the momentum form from consistent initial data.

    ``config.omega`` is not used by the flow: the natural frequencies are
    induced from the initial data and recorded on the result, together
    with the per-sample conservation residuals.
    """
    th = _check_initial_phases(config, theta0)
    td = _check_initial_velocities(config, thetadot0)
    p = config.model.momentum(td)
    nu = p - coupling(config, th)
    n_full, rem = _step_plan(config.dt, config.t_final)
    times = [0.0]
    thetas = [th.copy()]
    momenta = [p.copy()]
    for step in range(1, n_full + 1):
        th, p = _advance_pair(config, th, p, config.dt)
        if step % config.record_every == 0 and not (step == n_full and rem == 0.0):
            times.append(step * config.dt)
            thetas.append(th.copy())
            momenta.append(p.copy())
    if rem > 0.0:
        th, p = _advance_pair(config, th, p, rem)
    times.append(config.t_final)
    thetas.append(th.copy())
    momenta.append(p.copy())

    stamps = np.asarray(times, dtype=float)
    phases = np.vstack(thetas)
    drives = np.vstack(momenta)
    vels = config.model.velocity(drives)
    diff = phases[:, None, :] - phases[:, :, None]
    per_sample_coupling = (config.kappa / config.n) * np.sin(diff).sum(axis=2)
    residuals = drives - per_sample_coupling - nu[None, :]
    return MomentumTrajectory(config, stamps, phases, drives, vels, residuals, nu)


# ----------------------------------------------------------------------
# export
# ----------------------------------------------------------------------


def write_trajectory_csv(traj, path) -> None:
    """Write ``t, theta_1..theta_n, thetadot_1..thetadot_n`` at 17 significant digits."""
    n = traj.config.n
    header = ",".join(
        ["t"]
        + [f"theta_{i}" for i in range(1, n + 1)]
        + [f"thetadot_{i}" for i in range(1, n + 1)]
    )
    data = np.column_stack([traj.times, traj.thetas, traj.theta_dots])
    np.savetxt(path, data, delimiter=",", header=header, comments="", fmt="%.16e")
