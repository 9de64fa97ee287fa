"""Energy functionals, inequality monitors and decay-rate fitting.

The observables per time sample are

    E     = 1/2 ||u'||^2 + 1/2 ||u||_a^2 + K/2 ||u||^2
    psi   = <u, u'> + lam/2 ||u||^2 + lam0/2 u(0)^2 + lam1/2 u(1)^2
    Gamma = E + delta * psi                      (Lyapunov functional)
    sigma = ||f(t)||^2 + g0(t)^2 + g1(t)^2       (forcing magnitude)
    X     = ||u'||^2 + ||u||_1^2
            + int_0^t (|u'(0,s)|^2 + |u'(1,s)|^2) ds

and the monitored inequalities are the sandwich beta1*E <= Gamma <= beta2*E
and the dissipation inequality

    Gamma'(t) <= -delta*Gamma(t) + 1/2*(1/eps1 + delta/eps2)*sigma(t),

whose discrete check uses centered differences with an explicitly
dt-dependent tolerance calibrated by Richardson comparison of a run pair
(dt, dt/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionError,
    InsufficientDataError,
    TooFewSamplesError,
)
from .galerkin import Forcing, GalerkinSystem, integrate_f_squared
from .integrate import Trajectory
from .params import DerivedConstants, ProblemParams

__all__ = [
    "EnergyRecord",
    "DecayReport",
    "SandwichReport",
    "DifferentialReport",
    "energy",
    "psi",
    "lyapunov",
    "sigma_forcing",
    "record_trajectory",
    "check_sandwich",
    "check_differential_inequality",
    "fit_decay_rate",
]

# Samples below this energy are rounding noise; the log fit excludes them.
ENERGY_FLOOR = 1e-14


@dataclass(frozen=True)
class EnergyRecord:
    t: float
    E: float
    psi: float
    Gamma: float
    sigma: float
    X: float


@dataclass(frozen=True)
class DecayReport:
    """Fitted exponential envelope of E plus the monitor outcomes.

    ``sandwich_violations`` / ``differential_violations`` are None until the
    corresponding checks have been run (the fit itself does not run them).
    """

    fitted_rate: float
    fitted_amplitude: float
    theoretical_delta: float
    fit_window: tuple[float, float]
    residual: float
    sandwich_violations: int | None = None
    differential_violations: int | None = None


@dataclass(frozen=True)
class SandwichReport:
    violations: int
    worst_ratio: float


@dataclass(frozen=True)
class DifferentialReport:
    violations: int
    worst_margin: float
    tolerance: float
    c_dt: float


def _state(sys: GalerkinSystem, c, v):
    c = np.asarray(c, dtype=float)
    v = np.asarray(v, dtype=float)
    if c.shape != (sys.m,) or v.shape != (sys.m,):
        raise DimensionError(f"state vectors must have length {sys.m}")
    return c, v


def energy(sys: GalerkinSystem, p: ProblemParams, c, v) -> float:
    """Total energy: kinetic + boundary-augmented potential + restoring term."""
    c, v = _state(sys, c, v)
    return float(0.5 * v @ sys.M @ v + 0.5 * c @ sys.A @ c + 0.5 * p.K * (c @ sys.M @ c))


def psi(sys: GalerkinSystem, p: ProblemParams, c, v) -> float:
    """Auxiliary functional mixing displacement and velocity."""
    c, v = _state(sys, c, v)
    return float(
        c @ sys.M @ v
        + 0.5 * p.lam * (c @ sys.M @ c)
        + 0.5 * p.lam0 * (c @ sys.trace0) ** 2
        + 0.5 * p.lam1 * (c @ sys.trace1) ** 2
    )


def lyapunov(sys: GalerkinSystem, p: ProblemParams, dc: DerivedConstants, c, v) -> float:
    """Lyapunov functional Gamma = E + delta*psi."""
    return energy(sys, p, c, v) + dc.delta * psi(sys, p, c, v)


def sigma_forcing(forcing: Forcing, sys: GalerkinSystem, t: float) -> float:
    """Forcing magnitude ||f(t)||^2 + g0(t)^2 + g1(t)^2."""
    total = 0.0
    if forcing.f is not None:
        total += integrate_f_squared(sys, forcing.f, t)
    if forcing.g0 is not None:
        total += float(forcing.g0(t)) ** 2
    if forcing.g1 is not None:
        total += float(forcing.g1(t)) ** 2
    return total


def record_trajectory(
    traj: Trajectory,
    sys: GalerkinSystem,
    p: ProblemParams,
    dc: DerivedConstants | None,
    forcing: Forcing = Forcing(),
) -> list[EnergyRecord]:
    """Per-sample observables along a trajectory.

    ``dc=None`` is allowed for configs outside the decay hypotheses (for
    example the conservation control); Gamma then degenerates to E.
    """
    C, V, t = traj.coeffs, traj.velocities, traj.times
    E = (
        0.5 * np.einsum("ni,ij,nj->n", V, sys.M, V)
        + 0.5 * np.einsum("ni,ij,nj->n", C, sys.A, C)
        + 0.5 * p.K * np.einsum("ni,ij,nj->n", C, sys.M, C)
    )
    psi_all = (
        np.einsum("ni,ij,nj->n", C, sys.M, V)
        + 0.5 * p.lam * np.einsum("ni,ij,nj->n", C, sys.M, C)
        + 0.5 * p.lam0 * traj.traces[:, 0] ** 2
        + 0.5 * p.lam1 * traj.traces[:, 1] ** 2
    )
    delta = 0.0 if dc is None else dc.delta
    gamma = E + delta * psi_all
    if forcing.f is None and forcing.g0 is None and forcing.g1 is None:
        sigma = np.zeros_like(t)
    else:
        sigma = np.array([sigma_forcing(forcing, sys, ti) for ti in t])
    norm1 = traj.traces[:, 0] ** 2 + np.einsum("ni,ij,nj->n", C, sys.S, C)
    kinetic = np.einsum("ni,ij,nj->n", V, sys.M, V)
    X = kinetic + norm1 + traj.accumulators[:, 0] + traj.accumulators[:, 1]
    return [
        EnergyRecord(t=float(t[n]), E=float(E[n]), psi=float(psi_all[n]),
                     Gamma=float(gamma[n]), sigma=float(sigma[n]), X=float(X[n]))
        for n in range(len(t))
    ]


def check_sandwich(records, dc: DerivedConstants) -> SandwichReport:
    """Count samples violating beta1*E <= Gamma <= beta2*E.

    Tolerance is 1e-10 * max(E, 1) per sample.  The worst ratio is the
    largest violation margin scaled the same way (negative when every sample
    sits strictly inside the sandwich).
    """
    violations = 0
    worst = -math.inf
    for r in records:
        tol = 1e-10 * max(r.E, 1.0)
        low_gap = dc.beta1 * r.E - r.Gamma
        high_gap = r.Gamma - dc.beta2 * r.E
        gap = max(low_gap, high_gap)
        worst = max(worst, gap / max(r.E, 1.0))
        if gap > tol:
            violations += 1
    return SandwichReport(violations=violations, worst_ratio=worst)


def _dissipation_margins(records, dc: DerivedConstants) -> tuple[np.ndarray, float]:
    """Centered-difference margins of the dissipation inequality (interior samples)."""
    if len(records) < 3:
        raise TooFewSamplesError(f"need at least 3 records, got {len(records)}")
    t = np.array([r.t for r in records])
    gamma = np.array([r.Gamma for r in records])
    sigma = np.array([r.sigma for r in records])
    dts = np.diff(t)
    dt = dts[0]
    if not np.allclose(dts, dt, rtol=1e-9, atol=1e-12):
        raise ValueError("records are not uniformly sampled")
    dgamma = (gamma[2:] - gamma[:-2]) / (2.0 * dt)
    rhs = -dc.delta * gamma[1:-1] + 0.5 * (1.0 / dc.eps1 + dc.delta / dc.eps2) * sigma[1:-1]
    return dgamma - rhs, dt


def check_differential_inequality(
    records,
    dc: DerivedConstants,
    refined_records=None,
    c_dt: float | None = None,
) -> DifferentialReport:
    """Count dissipation-inequality violations beyond the dt^2 tolerance.

    The tolerance is c_dt*dt^2 + 1e-8.  When ``refined_records`` (a run of
    the same scenario at dt/2) is given, c_dt is estimated by Richardson
    comparison of the two worst margins; otherwise ``c_dt`` may be supplied
    directly and defaults to 0.
    """
    margins, dt = _dissipation_margins(records, dc)
    if refined_records is not None:
        refined_margins, dt_half = _dissipation_margins(refined_records, dc)
        if not math.isclose(dt_half, dt / 2.0, rel_tol=1e-9):
            raise ValueError("refined records must be sampled at dt/2")
        c_dt = abs(float(margins.max()) - float(refined_margins.max())) / (0.75 * dt * dt)
    elif c_dt is None:
        c_dt = 0.0
    tol = c_dt * dt * dt + 1e-8
    violations = int(np.sum(margins > tol))
    return DifferentialReport(
        violations=violations,
        worst_margin=float(margins.max()),
        tolerance=tol,
        c_dt=float(c_dt),
    )


def fit_decay_rate(
    records,
    fit_window: tuple[float, float] | None = None,
    theoretical_delta: float = math.nan,
) -> DecayReport:
    """Ordinary least squares of log E against t over the window.

    The window defaults to the tail half of the horizon, [T/2, T], and is
    clipped to samples with E above the rounding floor.  The residual is the
    root-mean-square misfit of the fit in log space.

    Raises InsufficientDataError when fewer than 10 usable samples remain
    (the energy underflowed, i.e. decay was too fast for the horizon).
    """
    t = np.array([r.t for r in records])
    E = np.array([r.E for r in records])
    if fit_window is None:
        t_end = t[-1]
        fit_window = (0.5 * t_end, t_end)
    mask = (t >= fit_window[0]) & (t <= fit_window[1]) & (E > ENERGY_FLOOR)
    if int(mask.sum()) < 10:
        raise InsufficientDataError(
            f"only {int(mask.sum())} usable samples in window {fit_window}"
        )
    logE = np.log(E[mask])
    slope, intercept = np.polyfit(t[mask], logE, 1)
    resid = np.sqrt(np.mean((logE - (slope * t[mask] + intercept)) ** 2))
    return DecayReport(
        fitted_rate=float(-slope),
        fitted_amplitude=float(np.exp(intercept)),
        theoretical_delta=theoretical_delta,
        fit_window=(float(fit_window[0]), float(fit_window[1])),
        residual=float(resid),
    )
