"""Shared fixtures, including an independent reference integrator.

The two-oscillator classical system is simple enough to integrate with a
standalone scalar RK4 written directly against the math module.  The
library integrator is checked against this reference rather than against
itself, and the expensive tiny-step reference solution is computed once
per session.
"""

from __future__ import annotations

import math

import pytest

# Reference problem shared by the self-consistency and order checks:
# asymmetric frequencies and phases so no term degenerates.
PAIR_THETA0 = (0.1, 1.9)
PAIR_NU = (0.3, -0.2)
PAIR_KAPPA = 1.0
PAIR_T_FINAL = 1.0
PAIR_REFERENCE_DT = 1e-6


def classical_pair_reference(theta0, nu, kappa, dt, t_final):
    """Scalar RK4 for two classical oscillators; no numpy, no library code."""
    a, b = float(theta0[0]), float(theta0[1])
    na, nb = float(nu[0]), float(nu[1])
    half = 0.5 * kappa

    def rates(x, y):
        s = math.sin(y - x)
        return na + half * s, nb - half * s

    steps = round(t_final / dt)
    for _ in range(steps):
        k1a, k1b = rates(a, b)
        k2a, k2b = rates(a + 0.5 * dt * k1a, b + 0.5 * dt * k1b)
        k3a, k3b = rates(a + 0.5 * dt * k2a, b + 0.5 * dt * k2b)
        k4a, k4b = rates(a + dt * k3a, b + dt * k3b)
        a += (dt / 6.0) * (k1a + 2.0 * k2a + 2.0 * k3a + k4a)
        b += (dt / 6.0) * (k1b + 2.0 * k2b + 2.0 * k3b + k4b)
    return a, b


@pytest.fixture(scope="session")
def pair_reference_solution():
    """Phases of the reference pair at t=1, integrated at dt=1e-6."""
    return classical_pair_reference(
        PAIR_THETA0, PAIR_NU, PAIR_KAPPA, PAIR_REFERENCE_DT, PAIR_T_FINAL
    )
