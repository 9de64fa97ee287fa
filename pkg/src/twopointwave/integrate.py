"""Time integration of the semi-discrete system.

The production scheme is the implicit midpoint rule: A-stable, second order,
and it conserves the quadratic energy exactly in the undamped limit, which
gives a free correctness probe.  A classical RK4 integrator at tiny
dimension serves as an independent brute-force oracle.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DimensionError, SingularMatrixError
from .galerkin import Forcing, GalerkinSystem, Mesh, load_vector

__all__ = [
    "Trajectory",
    "project_initial_data",
    "step",
    "integrate",
    "oracle_integrate",
    "MidpointStepper",
]


@dataclass(frozen=True)
class Trajectory:
    """Uniformly sampled states plus boundary traces and running integrals.

    traces columns: u(0,t), u(1,t), u'(0,t), u'(1,t).
    accumulators columns: int_0^t |u'(0,s)|^2 ds, int_0^t |u'(1,s)|^2 ds
    (trapezoid rule on the sample grid).
    """

    times: np.ndarray
    coeffs: np.ndarray
    velocities: np.ndarray
    traces: np.ndarray
    accumulators: np.ndarray
    dt: float

    @property
    def n_samples(self) -> int:
        return len(self.times)


def project_initial_data(mesh: Mesh, u0, u1) -> tuple[np.ndarray, np.ndarray]:
    """Nodal interpolants of the initial displacement and velocity."""
    c0 = np.broadcast_to(np.asarray(u0(mesh.nodes), dtype=float), mesh.nodes.shape).copy()
    v0 = np.broadcast_to(np.asarray(u1(mesh.nodes), dtype=float), mesh.nodes.shape).copy()
    return c0, v0


class MidpointStepper:
    """Implicit midpoint update with the iteration matrix factored once.

    With z = (c, v), c' = v and M v' = F(t) - C_mat v - K_mat c, the midpoint
    velocity vm solves

        (M + dt/2*C_mat + dt^2/4*K_mat) vm = M v_n + dt/2*(F(t+dt/2) - K_mat c_n)

    and then c_{n+1} = c_n + dt*vm, v_{n+1} = 2*vm - v_n.
    """

    def __init__(self, sys: GalerkinSystem, dt: float):
        if dt <= 0:
            raise ValueError(f"dt must be positive, got {dt}")
        self.sys = sys
        self.dt = dt
        iteration_matrix = sys.M + 0.5 * dt * sys.C_mat + 0.25 * dt * dt * sys.K_mat
        with warnings.catch_warnings():
            # singularity is detected on the factor's diagonal below and
            # reported as SingularMatrixError
            warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
            lu, piv = scipy.linalg.lu_factor(iteration_matrix, check_finite=False)
        diag = np.abs(np.diag(lu))
        if not np.all(np.isfinite(diag)) or np.min(diag) <= 1e-14 * max(np.max(diag), 1.0):
            raise SingularMatrixError(dt)
        self._lu = (lu, piv)

    def step(self, forcing: Forcing, c: np.ndarray, v: np.ndarray, t: float):
        dt = self.dt
        sys = self.sys
        rhs = sys.M @ v + 0.5 * dt * (load_vector(sys, forcing, t + 0.5 * dt) - sys.K_mat @ c)
        vm = scipy.linalg.lu_solve(self._lu, rhs, check_finite=False)
        return c + dt * vm, 2.0 * vm - v


def step(sys: GalerkinSystem, forcing: Forcing, state, t: float, dt: float):
    """Single midpoint update (c, v) -> (c, v) at t + dt.

    Convenience wrapper that factors the iteration matrix on each call; use
    ``integrate`` (one factorization for the whole run) for long trajectories.
    """
    c, v = state
    c = np.asarray(c, dtype=float)
    v = np.asarray(v, dtype=float)
    if c.shape != (sys.m,) or v.shape != (sys.m,):
        raise DimensionError(f"state vectors must have length {sys.m}")
    return MidpointStepper(sys, dt).step(forcing, c, v, t)


def _resolve_steps(T: float, dt: float) -> int:
    if T <= 0 or dt <= 0:
        raise ValueError("T and dt must be positive")
    n_steps = int(round(T / dt))
    if n_steps < 1 or abs(n_steps * dt - T) > 1e-9 * max(T, 1.0):
        raise ValueError(f"T={T} is not an integral multiple of dt={dt}")
    return n_steps


def _package_trajectory(
    sys: GalerkinSystem, times: np.ndarray, C: np.ndarray, V: np.ndarray, dt: float
) -> Trajectory:
    tr_u0 = C @ sys.trace0
    tr_u1 = C @ sys.trace1
    tr_v0 = V @ sys.trace0
    tr_v1 = V @ sys.trace1
    traces = np.column_stack([tr_u0, tr_u1, tr_v0, tr_v1])
    acc = np.zeros((len(times), 2))
    acc[1:, 0] = np.cumsum(0.5 * dt * (tr_v0[:-1] ** 2 + tr_v0[1:] ** 2))
    acc[1:, 1] = np.cumsum(0.5 * dt * (tr_v1[:-1] ** 2 + tr_v1[1:] ** 2))
    return Trajectory(
        times=times, coeffs=C, velocities=V, traces=traces, accumulators=acc, dt=dt
    )


def integrate(
    sys: GalerkinSystem,
    forcing: Forcing,
    c0: np.ndarray,
    v0: np.ndarray,
    T: float,
    dt: float,
    t0: float = 0.0,
) -> Trajectory:
    """Advance the system from (c0, v0) over [t0, t0+T] with fixed step dt."""
    n_steps = _resolve_steps(T, dt)
    stepper = MidpointStepper(sys, dt)
    m = sys.m
    c0 = np.asarray(c0, dtype=float)
    v0 = np.asarray(v0, dtype=float)
    if c0.shape != (m,) or v0.shape != (m,):
        raise DimensionError(f"initial vectors must have length {m}")
    C = np.empty((n_steps + 1, m))
    V = np.empty((n_steps + 1, m))
    C[0] = c0
    V[0] = v0
    times = t0 + dt * np.arange(n_steps + 1)
    c, v = C[0], V[0]
    for n in range(n_steps):
        c, v = stepper.step(forcing, c, v, times[n])
        C[n + 1] = c
        V[n + 1] = v
    return _package_trajectory(sys, times, C, V, dt)


# The oracle is meant for tiny cross-check systems only; beyond this size the
# explicit inverse and the step count stop being sensible.
ORACLE_MAX_DIM = 8


def oracle_integrate(
    sys: GalerkinSystem,
    forcing: Forcing,
    c0: np.ndarray,
    v0: np.ndarray,
    T: float,
    dt: float,
    t0: float = 0.0,
) -> Trajectory:
    """Classical explicit RK4 on the first-order form, for validation only."""
    m = sys.m
    if m > ORACLE_MAX_DIM:
        raise DimensionError(f"oracle supports m <= {ORACLE_MAX_DIM}, got {m}")
    n_steps = _resolve_steps(T, dt)
    c0 = np.asarray(c0, dtype=float)
    v0 = np.asarray(v0, dtype=float)
    if c0.shape != (m,) or v0.shape != (m,):
        raise DimensionError(f"initial vectors must have length {m}")
    Minv = np.linalg.inv(sys.M)
    A = np.zeros((2 * m, 2 * m))
    A[:m, m:] = np.eye(m)
    A[m:, :m] = -Minv @ sys.K_mat
    A[m:, m:] = -Minv @ sys.C_mat

    homogeneous = forcing.f is None and forcing.g0 is None and forcing.g1 is None

    def rhs(z, t):
        dz = A @ z
        if not homogeneous:
            dz[m:] += Minv @ load_vector(sys, forcing, t)
        return dz

    Z = np.empty((n_steps + 1, 2 * m))
    Z[0, :m] = c0
    Z[0, m:] = v0
    times = t0 + dt * np.arange(n_steps + 1)
    z = Z[0].copy()
    half = 0.5 * dt
    for n in range(n_steps):
        t = times[n]
        k1 = rhs(z, t)
        k2 = rhs(z + half * k1, t + half)
        k3 = rhs(z + half * k2, t + half)
        k4 = rhs(z + dt * k3, t + dt)
        z = z + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        Z[n + 1] = z
    return _package_trajectory(sys, times, Z[:, :m].copy(), Z[:, m:].copy(), dt)
