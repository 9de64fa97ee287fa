"""Piecewise-linear Galerkin discretization on a uniform mesh of [0, 1].

Hat functions give exact endpoint traces (w_j(0), w_j(1) in {0, 1}) and
closed-form mass/stiffness matrices, so the semi-discrete system

    M c'' + (lam*M + D) c' + (A + K*M + B) c = F(t)

reproduces the weak form of the problem term for term:

    A = S + h0*tr0 tr0^T + h1*tr1 tr1^T        (stiffness + boundary springs)
    D = lam0*tr0 tr0^T + lt1*tr0 tr1^T
      + lam1*tr1 tr1^T + lt0*tr1 tr0^T         (boundary velocity coupling)
    B = ht1*tr0 tr1^T + ht0*tr1 tr0^T          (displacement cross-coupling)
    F_j(t) = -g0(t) w_j(0) - g1(t) w_j(1) + <f(., t), w_j>

Matrices are dense: desk-scale dimensions, and the rank-2 boundary
couplings break pure tridiagonality anyway.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DimensionError, MeshError
from .params import ProblemParams

__all__ = [
    "Mesh",
    "uniform_mesh",
    "Forcing",
    "GalerkinSystem",
    "assemble",
    "load_vector",
    "norm_1_sq",
    "norm_a_sq",
    "sup_norm",
]

# 3-point Gauss-Legendre on the reference element [-1, 1]: exact for the
# polynomial manufactured solutions and well above the scheme's order.
_GAUSS_X, _GAUSS_W = np.polynomial.legendre.leggauss(3)
# Hat shape functions at the reference quadrature points.
_SHAPE_LEFT = 0.5 * (1.0 - _GAUSS_X)
_SHAPE_RIGHT = 0.5 * (1.0 + _GAUSS_X)


@dataclass(frozen=True)
class Mesh:
    """Uniform node set on [0, 1]; nodes[0] = 0 and nodes[-1] = 1."""

    n_nodes: int
    nodes: np.ndarray
    h: float


def uniform_mesh(n_nodes: int) -> Mesh:
    if n_nodes < 2:
        raise MeshError(f"need at least 2 nodes, got {n_nodes}")
    nodes = np.linspace(0.0, 1.0, n_nodes)
    return Mesh(n_nodes=n_nodes, nodes=nodes, h=1.0 / (n_nodes - 1))


@dataclass(frozen=True)
class Forcing:
    """Interior load f(x, t) plus boundary data g0(t), g1(t).

    ``f`` must accept numpy arrays in its first argument; ``None`` for any
    component means identically zero (and skips its quadrature).
    """

    f: Callable | None = None
    g0: Callable | None = None
    g1: Callable | None = None


ZERO_FORCING = Forcing()


@dataclass
class GalerkinSystem:
    """Assembled matrices of the semi-discrete system.

    C_mat = lam*M + D and K_mat = A + K*M + B are cached because every time
    step uses them.
    """

    mesh: Mesh
    p: ProblemParams
    M: np.ndarray
    S: np.ndarray
    A: np.ndarray
    D: np.ndarray
    B: np.ndarray
    trace0: np.ndarray
    trace1: np.ndarray
    C_mat: np.ndarray = field(repr=False, default=None)
    K_mat: np.ndarray = field(repr=False, default=None)
    quad_x: np.ndarray = field(repr=False, default=None)

    @property
    def m(self) -> int:
        return self.M.shape[0]


def assemble(mesh: Mesh, p: ProblemParams) -> GalerkinSystem:
    """Build mass, stiffness and boundary-coupling matrices on ``mesh``.

    Raises MeshError for fewer than 2 nodes or a non-uniform node set.
    """
    n = mesh.n_nodes
    if n < 2:
        raise MeshError(f"need at least 2 nodes, got {n}")
    spacings = np.diff(mesh.nodes)
    if not np.allclose(spacings, mesh.h, rtol=1e-12, atol=1e-14):
        raise MeshError("mesh is not uniform")

    h = mesh.h
    M = np.zeros((n, n))
    S = np.zeros((n, n))
    idx = np.arange(n)
    M[idx, idx] = 2.0 * h / 3.0
    M[0, 0] = M[-1, -1] = h / 3.0
    M[idx[:-1], idx[:-1] + 1] = h / 6.0
    M[idx[:-1] + 1, idx[:-1]] = h / 6.0
    S[idx, idx] = 2.0 / h
    S[0, 0] = S[-1, -1] = 1.0 / h
    S[idx[:-1], idx[:-1] + 1] = -1.0 / h
    S[idx[:-1] + 1, idx[:-1]] = -1.0 / h

    tr0 = np.zeros(n)
    tr0[0] = 1.0
    tr1 = np.zeros(n)
    tr1[-1] = 1.0

    A = S + p.h0 * np.outer(tr0, tr0) + p.h1 * np.outer(tr1, tr1)
    D = (
        p.lam0 * np.outer(tr0, tr0)
        + p.lt1 * np.outer(tr0, tr1)
        + p.lam1 * np.outer(tr1, tr1)
        + p.lt0 * np.outer(tr1, tr0)
    )
    B = p.ht1 * np.outer(tr0, tr1) + p.ht0 * np.outer(tr1, tr0)

    # Global Gauss points, one row per element.
    mids = 0.5 * (mesh.nodes[:-1] + mesh.nodes[1:])
    quad_x = mids[:, None] + 0.5 * h * _GAUSS_X[None, :]

    return GalerkinSystem(
        mesh=mesh,
        p=p,
        M=M,
        S=S,
        A=A,
        D=D,
        B=B,
        trace0=tr0,
        trace1=tr1,
        C_mat=p.lam * M + D,
        K_mat=A + p.K * M + B,
        quad_x=quad_x,
    )


def _quad_values(f: Callable, quad_x: np.ndarray, t: float) -> np.ndarray:
    vals = np.asarray(f(quad_x, t), dtype=float)
    if vals.shape != quad_x.shape:
        vals = np.broadcast_to(vals, quad_x.shape)
    return vals


def load_vector(sys: GalerkinSystem, forcing: Forcing, t: float) -> np.ndarray:
    """Right-hand side F(t): boundary data plus quadrature of <f(., t), w_j>."""
    F = np.zeros(sys.m)
    if forcing.g0 is not None:
        F -= float(forcing.g0(t)) * sys.trace0
    if forcing.g1 is not None:
        F -= float(forcing.g1(t)) * sys.trace1
    if forcing.f is not None:
        fe = _quad_values(forcing.f, sys.quad_x, t)
        scaled = (0.5 * sys.mesh.h) * fe * _GAUSS_W
        F[:-1] += scaled @ _SHAPE_LEFT
        F[1:] += scaled @ _SHAPE_RIGHT
    return F


def integrate_f_squared(sys: GalerkinSystem, f: Callable, t: float) -> float:
    """Quadrature of the squared interior load at time t."""
    fe = _quad_values(f, sys.quad_x, t)
    return float((0.5 * sys.mesh.h) * np.sum(fe**2 @ _GAUSS_W))


def _check_dim(sys: GalerkinSystem, c: np.ndarray) -> np.ndarray:
    c = np.asarray(c, dtype=float)
    if c.shape != (sys.m,):
        raise DimensionError(f"expected vector of length {sys.m}, got shape {c.shape}")
    return c


def norm_1_sq(sys: GalerkinSystem, c: np.ndarray) -> float:
    """Squared boundary-anchored H1 norm: v(0)^2 + ||v_x||^2."""
    c = _check_dim(sys, c)
    return float((c @ sys.trace0) ** 2 + c @ sys.S @ c)


def norm_a_sq(sys: GalerkinSystem, c: np.ndarray) -> float:
    """Squared energy norm of the boundary-augmented bilinear form."""
    c = _check_dim(sys, c)
    return float(c @ sys.A @ c)


def sup_norm(sys: GalerkinSystem, c: np.ndarray) -> float:
    """Exact sup norm of the piecewise-linear function: max over node values."""
    c = _check_dim(sys, c)
    return float(np.max(np.abs(c)))


def error_norms(sys: GalerkinSystem, c: np.ndarray, u_ref, ux_ref) -> tuple[float, float]:
    """L2 and boundary-anchored H1 distance to a reference function.

    ``u_ref``/``ux_ref`` are x-callables (already bound at the comparison
    time); the element Gauss rule integrates the squared differences.
    """
    c = _check_dim(sys, c)
    h = sys.mesh.h
    uh = np.outer(c[:-1], _SHAPE_LEFT) + np.outer(c[1:], _SHAPE_RIGHT)
    uhx = np.repeat(((c[1:] - c[:-1]) / h)[:, None], len(_GAUSS_W), axis=1)
    ue = np.broadcast_to(np.asarray(u_ref(sys.quad_x), dtype=float), sys.quad_x.shape)
    uex = np.broadcast_to(np.asarray(ux_ref(sys.quad_x), dtype=float), sys.quad_x.shape)
    l2_sq = 0.5 * h * float(np.sum(((uh - ue) ** 2) @ _GAUSS_W))
    grad_sq = 0.5 * h * float(np.sum(((uhx - uex) ** 2) @ _GAUSS_W))
    trace_sq = (float(c[0]) - float(np.asarray(u_ref(0.0), dtype=float))) ** 2
    return np.sqrt(l2_sq), np.sqrt(trace_sq + grad_sq)
