"""Center extraction by orthogonal decomposition and modulation velocities.

Given a field state in the two-kink sector, a damped Newton iteration finds
centers (x1, x2) such that the remainder g = phi - K1 - K2 is orthogonal
(in the Simpson-weighted discrete L^2 product) to both translation modes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .functionals import (
    RemainderNorms,
    cut_function,
    cut_function_derivative,
    remainder_norms,
    simpson_weights,
    spatial_derivative,
)
from .model import (
    antikink_derivative,
    antikink_value,
    kink_derivative,
    kink_value,
)

MAX_NEWTON_ITERS = 50
MIN_SEPARATION = 1.0          # Newton aborts below this separation
TRACK_VALID_SEPARATION = 2.0  # frames closer than this are marked invalid
_DET_FLOOR = 1e-8
_ORTHO_RTOL = 1e-10
_ORTHO_ATOL = 1e-13


class ModulationError(RuntimeError):
    """Raised when the center solve cannot produce a valid frame."""


@dataclass(frozen=True)
class ModulationVelocities:
    xdot1: float
    xdot2: float
    p1: float
    p2: float


@dataclass(frozen=True)
class ModulationFrame:
    """Extracted centers, remainder fields, and solve diagnostics."""

    t: float
    x1: float
    x2: float
    z: float
    g: np.ndarray
    g_t: np.ndarray
    ortho_residuals: tuple[float, float]
    norms: RemainderNorms
    newton_iters: int
    matrix_det: float
    xdot1: float
    xdot2: float
    x0: float
    dx: float
    valid: bool = True

    @property
    def x(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(len(self.g))


def _mode_arrays(x: np.ndarray, x1: float, x2: float):
    """Translation modes and their derivatives at the given centers."""
    m1 = antikink_derivative(1, x - x1)
    m2 = kink_derivative(1, x - x2)
    dm1 = antikink_derivative(2, x - x1)
    dm2 = kink_derivative(2, x - x2)
    return m1, m2, dm1, dm2


def _residual_and_matrix(state, w, x1, x2):
    x = state.x
    g = state.phi - antikink_value(x - x1) - kink_value(x - x2)
    m1, m2, dm1, dm2 = _mode_arrays(x, x1, x2)
    r1 = float(w @ (g * m1))
    r2 = float(w @ (g * m2))
    cross = float(w @ (m1 * m2))
    mat = np.array(
        [
            [float(w @ (m1 * m1)) - float(w @ (g * dm1)), cross],
            [cross, float(w @ (m2 * m2)) - float(w @ (g * dm2))],
        ]
    )
    return np.array([r1, r2]), mat, g


def decompose(state, guess: tuple[float, float]) -> ModulationFrame:
    """Solve the orthogonality conditions for the kink centers.

    ``guess`` is an ordered pair (x1, x2) with separation >= 2; a damped
    Newton iteration with the exact 2x2 Jacobian refines it until the
    orthogonality residuals reach numerical floor.
    """
    x1, x2 = float(guess[0]), float(guess[1])
    if x2 - x1 < TRACK_VALID_SEPARATION:
        raise ModulationError(f"initial guess separation {x2 - x1:.3f} < 2")
    w = simpson_weights(state.n, state.dx)
    res, mat, g = _residual_and_matrix(state, w, x1, x2)
    res_norm = float(np.max(np.abs(res)))
    iters = 0
    mode_l2 = math.sqrt(float(w @ (antikink_derivative(1, state.x - x1) ** 2)))
    g_l2 = math.sqrt(max(float(w @ (g * g)), 0.0))
    while iters < MAX_NEWTON_ITERS and res_norm > max(1e-16, 1e-13 * g_l2):
        det = float(np.linalg.det(mat))
        if abs(det) < _DET_FLOOR:
            raise ModulationError(f"modulation matrix near-singular: det={det:.2e}")
        delta = np.linalg.solve(mat, -res)
        scale = 1.0
        improved = False
        for _ in range(10):
            nx1, nx2 = x1 + scale * delta[0], x2 + scale * delta[1]
            if nx2 - nx1 < MIN_SEPARATION:
                scale *= 0.5
                continue
            new_res, new_mat, new_g = _residual_and_matrix(state, w, nx1, nx2)
            new_norm = float(np.max(np.abs(new_res)))
            if new_norm < res_norm:
                improved = True
                break
            scale *= 0.5
        if not improved:
            break  # residual at numerical floor
        x1, x2, res, mat, g = nx1, nx2, new_res, new_mat, new_g
        res_norm = new_norm
        g_l2 = math.sqrt(max(float(w @ (g * g)), 0.0))
        iters += 1
    if x2 - x1 < MIN_SEPARATION:
        raise ModulationError(f"separation collapsed below 1: z={x2 - x1:.3f}")
    if res_norm > _ORTHO_RTOL * mode_l2 * g_l2 + _ORTHO_ATOL:
        raise ModulationError(
            f"Newton stopped after {iters} iterations with residual {res_norm:.2e} "
            f"above tolerance"
        )

    det = float(np.linalg.det(mat))
    if det < _DET_FLOOR:
        raise ModulationError(f"modulation matrix not positive: det={det:.2e}")
    m1, m2, _, _ = _mode_arrays(state.x, x1, x2)
    rhs = np.array([-float(w @ (state.pi * m1)), -float(w @ (state.pi * m2))])
    xdot = np.linalg.solve(mat, rhs)
    g_t = state.pi + xdot[0] * m1 + xdot[1] * m2
    norms = remainder_norms(g, g_t, state.dx)
    return ModulationFrame(
        t=state.t,
        x1=x1,
        x2=x2,
        z=x2 - x1,
        g=g,
        g_t=g_t,
        ortho_residuals=(float(res[0]), float(res[1])),
        norms=norms,
        newton_iters=iters,
        matrix_det=det,
        xdot1=float(xdot[0]),
        xdot2=float(xdot[1]),
        x0=state.x0,
        dx=state.dx,
    )


def orthogonality_ok(frame: ModulationFrame, mode_l2: float | None = None) -> bool:
    """Scaled orthogonality test with a small absolute floor for g ~ 0."""
    if mode_l2 is None:
        mode_l2 = math.sqrt(
            float(
                simpson_weights(len(frame.g), frame.dx)
                @ (antikink_derivative(1, frame.x - frame.x1) ** 2)
            )
        )
    g_l2 = math.sqrt(
        max(float(simpson_weights(len(frame.g), frame.dx) @ (frame.g ** 2)), 0.0)
    )
    tol = _ORTHO_RTOL * mode_l2 * g_l2 + _ORTHO_ATOL
    return all(abs(r) <= tol for r in frame.ortho_residuals)


def modulation_velocities(frame: ModulationFrame, pi, epsilon: float) -> ModulationVelocities:
    """Center velocities plus the cut-corrected momenta.

    The correction projects d_t phi on the translation modes augmented by
    the remainder inside a smooth window traveling with each kink; the
    window parameters follow gamma = ln ln(1/eps) / ln(1/eps) and
    theta = (1 - gamma)/(2 - gamma), with eps the (frozen) energy excess.
    """
    if not (0.0 < epsilon < math.exp(-1.0)):
        raise ValueError(
            f"energy excess must lie in (0, 1/e) for the cut exponents, got {epsilon}"
        )
    pi = np.asarray(pi, dtype=float)
    x = frame.x
    w = simpson_weights(len(frame.g), frame.dx)
    m1, m2, _, _ = _mode_arrays(x, frame.x1, frame.x2)

    log_inv = math.log(1.0 / epsilon)
    gamma = math.log(log_inv) / log_inv
    theta = (1.0 - gamma) / (2.0 - gamma)
    xi = (x - frame.x1) / frame.z
    chi = cut_function(xi, upper=theta, lower=theta * (1.0 - gamma))
    dchi = cut_function_derivative(xi, upper=theta, lower=theta * (1.0 - gamma)) / frame.z

    dg = spatial_derivative(frame.g, frame.dx, order=2)
    d_chi_g = dchi * frame.g + chi * dg
    d_inv_chi_g = -dchi * frame.g + (1.0 - chi) * dg
    mode_sq = float(w @ (m2 * m2))
    p1 = -float(w @ (pi * (m1 + d_chi_g))) / mode_sq
    p2 = -float(w @ (pi * (m2 + d_inv_chi_g))) / mode_sq
    return ModulationVelocities(xdot1=frame.xdot1, xdot2=frame.xdot2, p1=p1, p2=p2)


def initial_center_guess(state) -> tuple[float, float]:
    """Heuristic centers from the -1/sqrt2 and +1/sqrt2 level crossings."""
    target = 1.0 / math.sqrt(2.0)
    x = state.x
    phi = state.phi
    x1 = _first_crossing(x, phi, -target)
    x2 = _first_crossing(x, phi, target)
    if x1 is None or x2 is None or x1 >= x2:
        raise ModulationError("could not locate two ordered level crossings")
    return x1, x2


def _first_crossing(x, phi, level):
    below = phi < level
    idx = np.nonzero(below[:-1] & ~below[1:])[0]
    if idx.size == 0:
        return None
    i = int(idx[0])
    frac = (level - phi[i]) / (phi[i + 1] - phi[i])
    return float(x[i] + frac * (x[i + 1] - x[i]))


def track(snapshots) -> list[ModulationFrame]:
    """Decompose a chronological snapshot sequence, seeding each solve
    with the previous centers.

    A first-frame failure raises; later frames entering the collision
    regime (z < 2) or failing to converge are marked invalid and the last
    valid centers keep seeding subsequent attempts.
    """
    if not snapshots:
        raise ValueError("no snapshots to track")
    frames: list[ModulationFrame] = []
    guess = initial_center_guess(snapshots[0])
    first = decompose(snapshots[0], guess)
    frames.append(first)
    prev = first
    for snap in snapshots[1:]:
        dt = snap.t - prev.t
        seed = (prev.x1 + prev.xdot1 * dt, prev.x2 + prev.xdot2 * dt)
        if not all(math.isfinite(s) for s in seed):
            seed = (prev.x1, prev.x2)
        frame = None
        for attempt in (seed, None):
            try:
                g = attempt if attempt is not None else initial_center_guess(snap)
                frame = decompose(snap, g)
                break
            except ModulationError:
                continue
        if frame is None:
            frames.append(_invalid_frame(snap, (prev.x1, prev.x2)))
            continue
        if frame.z < TRACK_VALID_SEPARATION:
            frames.append(replace(frame, valid=False))
            continue
        frames.append(frame)
        prev = frame
    return frames


def _invalid_frame(state, seed) -> ModulationFrame:
    empty = np.zeros_like(state.phi)
    return ModulationFrame(
        t=state.t,
        x1=seed[0],
        x2=seed[1],
        z=seed[1] - seed[0],
        g=empty,
        g_t=empty,
        ortho_residuals=(float("nan"), float("nan")),
        norms=RemainderNorms(float("nan"), float("nan"), float("nan")),
        newton_iters=0,
        matrix_det=float("nan"),
        xdot1=float("nan"),
        xdot2=float("nan"),
        x0=state.x0,
        dx=state.dx,
        valid=False,
    )
