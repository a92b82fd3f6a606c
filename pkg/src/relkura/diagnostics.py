"""Observables over phase configurations and recorded trajectories.

Scalar observables (diameter, order parameter, potential, energy,
predicted contraction rate) operate on single configurations; the
trajectory-level helpers evaluate them along a recorded run and export
the series as plot-ready CSV.

The energy observable integrates the drive-response derivative against
the kinetic weight L**2/x**3 over the Lorentz-factor interval
[1, gamma_i] per oscillator and sums.  The implementation evaluates the
exact velocity-variable substitution of that integral (integrand
w * F'(w), which is smooth at the lower endpoint) with adaptive
Gauss-Kronrod quadrature at relative tolerance 1e-10; the
proper-velocity kind has the closed form c**2 * (gamma - 1) and skips
quadrature.  The classical kind has no finite velocity bound and no
such energy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from scipy.integrate import quad

from .errors import DegenerateFitError, DomainError, UnsupportedModelError
from .models import FrequencyResponse, ModelKind

if TYPE_CHECKING:
    from .dynamics import SystemConfig, Trajectory

__all__ = [
    "OrderParameter",
    "PotentialValue",
    "DecayFit",
    "DiagnosticsSeries",
    "phase_diameter",
    "order_parameter",
    "potential",
    "energy",
    "l1_discrepancy",
    "predicted_rate",
    "fit_decay_rate",
    "theta_star",
    "compute_diagnostics",
    "write_diagnostics_csv",
]

# Below this magnitude the centroid of the unit phasors is numerically
# zero and the mean phase angle carries no information.
R_UNDEFINED_BELOW = 1e-12


@dataclass(frozen=True)
class OrderParameter:
    """Centroid length r in [0, 1] and mean phase phi in (-pi, pi].

    ``phi`` is None when r is numerically zero (balanced configurations
    such as antipodal pairs), where the mean phase is undefined.
    """

    r: float
    phi: float | None


@dataclass(frozen=True)
class PotentialValue:
    """Gradient-flow potential of a configuration.

    ``pair_term`` is the pairwise (1 - cos) sum scaled by kappa/(2n);
    ``pair_term_from_order`` re-derives it from the order parameter via
    kappa*n/2 * (1 - r**2), an exact identity useful as a cross-check.
    ``frequencies_centered`` flags |sum(omega)| <= 1e-9; without that the
    linear term makes the potential meaningful only up to drift.
    """

    value: float
    pair_term: float
    pair_term_from_order: float
    frequencies_centered: bool


@dataclass(frozen=True)
class DecayFit:
    """Least-squares exponential fit log(values) ~ intercept - rate * t."""

    rate: float
    intercept: float
    rms_residual: float


def phase_diameter(theta) -> float:
    """max(theta) - min(theta); phases are unwrapped so this can exceed 2*pi."""
    th = np.asarray(theta, dtype=float)
    if th.size == 0:
        raise ValueError("phase_diameter needs at least one phase")
    return float(np.ptp(th))


def order_parameter(theta) -> OrderParameter:
    th = np.asarray(theta, dtype=float)
    if th.size == 0:
        raise ValueError("order_parameter needs at least one phase")
    z = np.exp(1j * th).mean()
    r = float(np.abs(z))
    phi = float(np.angle(z)) if r > R_UNDEFINED_BELOW else None
    return OrderParameter(r, phi)


def potential(theta, kappa: float, omega) -> PotentialValue:
    th = np.asarray(theta, dtype=float)
    om = np.asarray(omega, dtype=float)
    if th.shape != om.shape:
        raise ValueError("theta and omega must have matching shapes")
    n = th.size
    cos_sum = float(np.cos(th[None, :] - th[:, None]).sum())
    pair = (kappa / (2.0 * n)) * (n * n - cos_sum)
    r = order_parameter(th).r
    from_order = 0.5 * kappa * n * (1.0 - r * r)
    value = -float(om @ th) + pair
    centered = abs(float(om.sum())) <= 1e-9
    return PotentialValue(value, pair, from_order, centered)


def energy(model: FrequencyResponse, theta_dot) -> float:
    """Total kinetic-type energy of the velocities under the given model.

    Raises UnsupportedModelError for the classical kind and DomainError
    when any |theta_dot| reaches the velocity bound.
    """
    if model.kind is ModelKind.CLASSICAL:
        raise UnsupportedModelError("the classical kind has no bounded-velocity energy")
    td = np.asarray(theta_dot, dtype=float).reshape(-1)
    bound = model.velocity_bound
    if not np.all(np.isfinite(td)) or np.any(np.abs(td) >= bound):
        raise DomainError(f"velocities must satisfy |theta_dot| < {bound}")
    if model.kind is ModelKind.PROPER_VELOCITY:
        # closed form c**2 * (gamma - 1), in the cancellation-free form
        # c**2 * u**2 / (s * (1 + s))
        u = td / bound
        s = np.sqrt((1.0 - u) * (1.0 + u))
        return float(np.sum(bound * bound * u * u / (s * (1.0 + s))))
    # Integrate w * F'(w) from 0 to |theta_dot|: the exact velocity-variable
    # substitution of the Lorentz-factor integral, with no endpoint cusp.
    # The integrand is a scalar twin of momentum_slope (QUADPACK evaluates
    # pointwise, and the array wrapper costs more than the arithmetic).
    c = float(bound)
    if model.kind is ModelKind.RAPIDITY:
        integrand = _rapidity_energy_integrand
    else:
        integrand = _full_energy_integrand
    total = 0.0
    for speed in np.abs(td):
        if speed == 0.0:
            continue
        val, _ = quad(integrand, 0.0, speed, args=(c,), epsabs=1e-14, epsrel=1e-10)
        total += val
    return float(total)


def _full_energy_integrand(w: float, c: float) -> float:
    span = (c - w) * (c + w)
    return w * (c**3 / span**1.5 + (c * c + w * w) / (span * span))


def _rapidity_energy_integrand(w: float, c: float) -> float:
    return w * (c * c) / ((c - w) * (c + w))


def l1_discrepancy(a, b) -> float:
    """Sum of absolute componentwise differences between two phase vectors."""
    av = np.asarray(a, dtype=float)
    bv = np.asarray(b, dtype=float)
    if av.shape != bv.shape:
        raise ValueError("l1_discrepancy needs vectors of matching shape")
    return float(np.abs(av - bv).sum())


def predicted_rate(config: "SystemConfig", initial_diameter: float) -> float:
    """Guaranteed contraction rate for a homogeneous ensemble.

    kappa * sin(D0)/D0 * min of the inverse-response slope over the drive
    range [nu - kappa, nu + kappa], valid when the initial diameter D0 is
    inside (0, pi).  Requires all natural frequencies equal.
    """
    om = config.omega
    if float(np.ptp(om)) != 0.0:
        raise DomainError("predicted_rate requires identical natural frequencies")
    if not (0.0 < initial_diameter < math.pi):
        raise DomainError("predicted_rate requires 0 < initial_diameter < pi")
    nu = float(om[0])
    floor = config.model.min_velocity_slope(nu - config.kappa, nu + config.kappa)
    return config.kappa * (math.sin(initial_diameter) / initial_diameter) * floor


def fit_decay_rate(times, values) -> DecayFit:
    """Fit log(values) linearly in time; rate is the negated slope.

    Requires at least three samples, strictly positive values, and
    non-degenerate times.
    """
    t = np.asarray(times, dtype=float).reshape(-1)
    v = np.asarray(values, dtype=float).reshape(-1)
    if t.shape != v.shape or t.size < 3:
        raise DegenerateFitError("fit needs matching times/values with >= 3 samples")
    if np.ptp(t) == 0.0:
        raise DegenerateFitError("fit needs at least two distinct times")
    if not np.all(v > 0.0):
        raise DegenerateFitError("fit needs strictly positive values")
    logs = np.log(v)
    slope, intercept = np.polyfit(t, logs, 1)
    resid = logs - (slope * t + intercept)
    rms = float(np.sqrt(np.mean(resid * resid)))
    return DecayFit(rate=float(-slope), intercept=float(intercept), rms_residual=rms)


def theta_star(kappa: float, omega_diameter: float) -> float:
    """Phase-lock half-angle asin(D(omega)/kappa); needs kappa > D(omega) >= 0."""
    if not (0.0 <= omega_diameter < kappa):
        raise DomainError("theta_star requires kappa > omega_diameter >= 0")
    return math.asin(omega_diameter / kappa)


# ----------------------------------------------------------------------
# trajectory-level series
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class DiagnosticsSeries:
    """Observables along one recorded trajectory.

    ``order_phi`` holds nan where the order parameter magnitude is
    numerically zero; ``energy`` is all-nan for the classical kind.
    ``omega_diameter`` is D(omega) of the generating config.
    """

    times: np.ndarray
    phase_diameter: np.ndarray
    frequency_diameter: np.ndarray
    order_r: np.ndarray
    order_phi: np.ndarray
    potential: np.ndarray
    energy: np.ndarray
    omega_diameter: float

    def write_csv(self, path) -> None:
        write_diagnostics_csv(self, path)


def compute_diagnostics(config: "SystemConfig", trajectory: "Trajectory") -> DiagnosticsSeries:
    th = trajectory.thetas
    vd = trajectory.theta_dots
    n = config.n
    pd = np.ptp(th, axis=1)
    fd = np.ptp(vd, axis=1)
    z = np.exp(1j * th).mean(axis=1)
    r = np.abs(z)
    phi = np.where(r > R_UNDEFINED_BELOW, np.angle(z), np.nan)
    cos_sums = np.cos(th[:, None, :] - th[:, :, None]).sum(axis=(1, 2))
    pots = -(th @ config.omega) + (config.kappa / (2.0 * n)) * (n * n - cos_sums)
    if config.model.kind is ModelKind.CLASSICAL:
        en = np.full(th.shape[0], np.nan)
    else:
        en = np.array([energy(config.model, row) for row in vd])
    return DiagnosticsSeries(
        times=trajectory.times,
        phase_diameter=pd,
        frequency_diameter=fd,
        order_r=r,
        order_phi=phi,
        potential=pots,
        energy=en,
        omega_diameter=float(np.ptp(config.omega)),
    )


def write_diagnostics_csv(series: DiagnosticsSeries, path) -> None:
    """Write ``t,diameter,freq_diameter,r,phi,potential,energy`` at 17 significant digits."""
    header = "t,diameter,freq_diameter,r,phi,potential,energy"
    data = np.column_stack(
        [
            series.times,
            series.phase_diameter,
            series.frequency_diameter,
            series.order_r,
            series.order_phi,
            series.potential,
            series.energy,
        ]
    )
    np.savetxt(path, data, delimiter=",", header=header, comments="", fmt="%.16e")
