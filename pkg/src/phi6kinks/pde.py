"""Time evolution of d_tt phi = d_xx phi - U'(phi) on a finite grid.

Velocity Verlet (kick-drift-kick) in time, centered 2nd- or 4th-order
Laplacian in space.  Boundary nodes are clamped to the vacuum values of the
initial data; an optional sponge layer damps the momentum near the edges
for long runs.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .model import (
    KinkSpec,
    Orientation,
    antikink_derivative,
    boosted_kink_field,
    eval_potential_derivative,
    kink_derivative,
)

_CFL_LIMIT = {2: 0.9, 4: 0.7}


@dataclass(frozen=True)
class FieldState:
    """Discretized (phi, d_t phi) on a uniform grid at one instant."""

    x0: float
    dx: float
    n: int
    phi: np.ndarray
    pi: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        if self.dx <= 0:
            raise ValueError(f"dx must be positive, got {self.dx}")
        if self.n < 5:
            raise ValueError(f"grid too small: n={self.n} < 5")
        if len(self.phi) != self.n or len(self.pi) != self.n:
            raise ValueError("phi/pi length does not match n")

    @property
    def x(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.n)

    def copy(self) -> "FieldState":
        return replace(self, phi=self.phi.copy(), pi=self.pi.copy())


@dataclass(frozen=True)
class SolverConfig:
    """Time step and spatial scheme; sponge disabled by default."""

    dt: float = 0.02
    stencil_order: int = 4
    sponge_width: float = 0.0
    sponge_strength: float = 0.0

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.stencil_order not in (2, 4):
            raise ValueError(f"stencil_order must be 2 or 4, got {self.stencil_order}")
        if self.sponge_width < 0 or self.sponge_strength < 0:
            raise ValueError("sponge parameters must be non-negative")

    def cfl(self, dx: float) -> float:
        return self.dt / dx

    def validate_cfl(self, dx: float) -> None:
        limit = _CFL_LIMIT[self.stencil_order]
        if self.cfl(dx) > limit:
            raise ValueError(
                f"CFL violation: dt/dx = {self.cfl(dx):.3f} exceeds {limit} "
                f"for stencil order {self.stencil_order}"
            )


def _laplacian(phi: np.ndarray, dx: float, order: int) -> np.ndarray:
    """Interior Laplacian; boundary entries are zero (edges stay clamped)."""
    out = np.zeros_like(phi)
    inv = 1.0 / (dx * dx)
    if order == 4:
        out[2:-2] = (
            -phi[:-4] + 16.0 * phi[1:-3] - 30.0 * phi[2:-2] + 16.0 * phi[3:-1] - phi[4:]
        ) * (inv / 12.0)
        out[1] = (phi[0] - 2.0 * phi[1] + phi[2]) * inv
        out[-2] = (phi[-3] - 2.0 * phi[-2] + phi[-1]) * inv
    else:
        out[1:-1] = (phi[:-2] - 2.0 * phi[1:-1] + phi[2:]) * inv
    return out


def _acceleration(phi: np.ndarray, dx: float, order: int) -> np.ndarray:
    acc = _laplacian(phi, dx, order)
    acc[1:-1] -= eval_potential_derivative(1, phi[1:-1])
    return acc


def _sponge_profile(state: FieldState, cfg: SolverConfig) -> np.ndarray | None:
    if cfg.sponge_width <= 0.0 or cfg.sponge_strength <= 0.0:
        return None
    x = state.x
    left = (state.x0 + cfg.sponge_width - x) / cfg.sponge_width
    right = (x - (x[-1] - cfg.sponge_width)) / cfg.sponge_width
    ramp = np.maximum(np.maximum(left, right), 0.0)
    return cfg.sponge_strength * ramp * ramp


def step(state: FieldState, cfg: SolverConfig) -> FieldState:
    """One velocity-Verlet update with clamped boundary nodes."""
    cfg.validate_cfl(state.dx)
    dt = cfg.dt
    order = cfg.stencil_order
    phi, pi = state.phi, state.pi

    pi_half = pi + (0.5 * dt) * _acceleration(phi, state.dx, order)
    phi_new = phi + dt * pi_half
    phi_new[0], phi_new[-1] = phi[0], phi[-1]
    pi_new = pi_half + (0.5 * dt) * _acceleration(phi_new, state.dx, order)
    pi_new[0] = pi_new[-1] = 0.0

    sponge = _sponge_profile(state, cfg)
    if sponge is not None:
        pi_new *= np.maximum(1.0 - dt * sponge, 0.0)

    if not (np.isfinite(phi_new).all() and np.isfinite(pi_new).all()):
        raise FloatingPointError(
            f"non-finite field detected; last valid time t={state.t:.6f}"
        )
    return FieldState(x0=state.x0, dx=state.dx, n=state.n, phi=phi_new, pi=pi_new,
                      t=state.t + dt)


def run(state: FieldState, cfg: SolverConfig, t_end: float, frame_cadence: int = 50):
    """Evolve to t_end, returning snapshots every frame_cadence steps.

    The returned list always includes the initial and final states; each
    snapshot owns its arrays.
    """
    if t_end <= state.t:
        raise ValueError(f"t_end={t_end} must exceed state.t={state.t}")
    if frame_cadence < 1:
        raise ValueError("frame_cadence must be >= 1")
    n_steps = int(round((t_end - state.t) / cfg.dt))
    if n_steps < 1:
        raise ValueError("t_end too close to state.t for one step")
    t0 = state.t
    snapshots = [state.copy()]
    current = state
    for k in range(1, n_steps + 1):
        current = step(current, cfg)
        current = replace(current, t=t0 + k * cfg.dt)
        if k % frame_cadence == 0 or k == n_steps:
            snapshots.append(current.copy())
    return snapshots


def init_two_kink_state(
    grid: tuple[float, float, int],
    x1: float,
    x2: float,
    v1: float = 0.0,
    v2: float = 0.0,
    perturbation: tuple[np.ndarray, np.ndarray] | None = None,
    lorentz_contract: bool = True,
) -> FieldState:
    """Antikink at x1 plus kink at x2 with boost speeds v1, v2 at t=0.

    With ``lorentz_contract`` each profile is the exact traveling-wave
    shape with its exact time derivative; otherwise the uncontracted
    superposition with pi = -v1 d_x K1 - v2 d_x K2 is used.  An optional
    perturbation (g0, g1) is added pointwise to (phi, pi).
    """
    x0, dx, n = grid
    if x1 >= x2:
        raise ValueError(f"kinks out of order: x1={x1} must be < x2={x2}")
    if not (abs(v1) < 1.0 and abs(v2) < 1.0):
        raise ValueError("kink speeds must satisfy |v| < 1")
    x_max = x0 + dx * (n - 1)
    if x1 - x0 < 40.0 or x_max - x2 < 40.0:
        raise ValueError(
            f"grid [{x0}, {x_max}] must cover kinks ({x1}, {x2}) with 40-unit margins"
        )
    x = x0 + dx * np.arange(n)
    anti = KinkSpec(Orientation.ANTIKINK, center=x1,
                    boost_velocity=v1 if lorentz_contract else 0.0)
    kink = KinkSpec(Orientation.KINK, center=x2,
                    boost_velocity=v2 if lorentz_contract else 0.0)
    a_val, a_dot = boosted_kink_field(anti, x, 0.0)
    k_val, k_dot = boosted_kink_field(kink, x, 0.0)
    phi = a_val + k_val
    if lorentz_contract:
        pi = a_dot + k_dot
    else:
        pi = -v1 * antikink_derivative(1, x - x1) - v2 * kink_derivative(1, x - x2)
    if perturbation is not None:
        g0, g1 = perturbation
        phi = phi + np.asarray(g0, dtype=float)
        pi = pi + np.asarray(g1, dtype=float)
    return FieldState(x0=x0, dx=dx, n=n, phi=np.asarray(phi), pi=np.asarray(pi), t=0.0)
