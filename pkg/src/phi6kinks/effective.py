"""Reduced two-body dynamics of the kink pair.

The separation obeys z'' = 16 sqrt(2) exp(-sqrt(2) z), a repulsive law with
the closed-form solution z(t) = (1/sqrt2) ln((8/v^2) cosh^2(sqrt2 v t + c));
the centers split this symmetrically around a drifting midpoint a + b t.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import SQRT2

_FORCE_COEFF = 16.0 * SQRT2  # separation acceleration prefactor
_ARCTANH_GUARD = 1e-15


@dataclass(frozen=True)
class EffectiveParams:
    """Parameters (v, c, a, b) of the closed-form center trajectories."""

    v: float
    c: float
    a: float
    b: float


@dataclass(frozen=True)
class ReducedTrajectory:
    t: np.ndarray
    z: np.ndarray
    zdot: np.ndarray


def params_from_initial(
    x1_0: float, x2_0: float, xdot1_0: float, xdot2_0: float
) -> EffectiveParams:
    """Fit (v, c, a, b) so the trajectories match positions and velocities
    at t = 0."""
    z0 = x2_0 - x1_0
    if z0 <= 0:
        raise ValueError(f"initial separation must be positive, got {z0}")
    zdot0 = xdot2_0 - xdot1_0
    v = math.sqrt(0.25 * zdot0 * zdot0 + 8.0 * math.exp(-SQRT2 * z0))
    ratio = zdot0 / (2.0 * v)
    if 1.0 - abs(ratio) < _ARCTANH_GUARD:
        raise ValueError(
            "free-streaming initial data: |zdot/(2v)| is within 1e-15 of 1, "
            "the interaction term has underflowed"
        )
    c = math.atanh(ratio)
    return EffectiveParams(
        v=v, c=c, a=0.5 * (x1_0 + x2_0), b=0.5 * (xdot1_0 + xdot2_0)
    )


def _log_cosh(y):
    """ln cosh(y), overflow-safe for |y| up to ~1e308."""
    ay = np.abs(y)
    return ay + np.log1p(np.exp(-2.0 * ay)) - math.log(2.0)


def separation_d(t, p: EffectiveParams):
    """Closed-form separation d(t)."""
    arg = SQRT2 * p.v * np.asarray(t, dtype=float) + p.c
    out = (math.log(8.0 / (p.v * p.v)) + 2.0 * _log_cosh(arg)) / SQRT2
    return out if out.ndim else float(out)


def separation_d_dot(t, p: EffectiveParams):
    """d'(t) = 2 v tanh(sqrt2 v t + c); approaches +-2v as t -> +-inf."""
    arg = SQRT2 * p.v * np.asarray(t, dtype=float) + p.c
    out = 2.0 * p.v * np.tanh(arg)
    return out if out.ndim else float(out)


def centers_d1_d2(t, p: EffectiveParams):
    """Center trajectories d1 < d2 splitting the separation around a + b t."""
    mid = p.a + p.b * np.asarray(t, dtype=float)
    half = 0.5 * separation_d(t, p)
    d1 = mid - half
    d2 = mid + half
    if np.ndim(d1):
        return d1, d2
    return float(d1), float(d2)


def centers_velocities(t, p: EffectiveParams):
    half = 0.5 * separation_d_dot(t, p)
    d1dot = p.b - half
    d2dot = p.b + half
    if np.ndim(d1dot):
        return d1dot, d2dot
    return float(d1dot), float(d2dot)


def conserved_quantity(z, zdot):
    """First integral zdot^2/4 + 8 exp(-sqrt2 z); equals v^2 on exact orbits."""
    out = np.asarray(zdot, dtype=float) ** 2 / 4.0 + 8.0 * np.exp(
        -SQRT2 * np.asarray(z, dtype=float)
    )
    return out if out.ndim else float(out)


def _rhs(y):
    return np.array([y[1], _FORCE_COEFF * math.exp(-SQRT2 * y[0])])


def integrate_reduced(z0: float, zdot0: float, t_end: float, dt: float) -> ReducedTrajectory:
    """Classic fixed-step RK4 for the separation equation, sampled every step."""
    if z0 <= 0:
        raise ValueError(f"initial separation must be positive, got {z0}")
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    n_steps = int(round(t_end / dt))
    t = dt * np.arange(n_steps + 1)
    z = np.empty(n_steps + 1)
    zdot = np.empty(n_steps + 1)
    y = np.array([z0, zdot0], dtype=float)
    z[0], zdot[0] = y
    for k in range(1, n_steps + 1):
        k1 = _rhs(y)
        k2 = _rhs(y + 0.5 * dt * k1)
        k3 = _rhs(y + 0.5 * dt * k2)
        k4 = _rhs(y + dt * k3)
        y = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        z[k], zdot[k] = y
    return ReducedTrajectory(t=t, z=z, zdot=zdot)
