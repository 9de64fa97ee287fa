import numpy as np
import pytest

from twopointwave import (
    Forcing,
    ProblemParams,
    assemble,
    derive_constants,
    integrate,
    project_initial_data,
    record_trajectory,
    uniform_mesh,
)

REFERENCE = ProblemParams(
    h0=1.0, h1=0.5, lam0=1.0, lam1=1.0,
    ht0=0.01, ht1=0.01, lt0=0.1, lt1=0.1,
    K=1.0, lam=1.0,
)


@pytest.fixture(scope="session")
def ref_params():
    return REFERENCE


@pytest.fixture(scope="session")
def ref_dc():
    return derive_constants(REFERENCE)


@pytest.fixture(scope="session")
def ref_system():
    return assemble(uniform_mesh(65), REFERENCE)


@pytest.fixture(scope="session")
def ref_run(ref_system, ref_dc):
    """Reference homogeneous run: u0 = cos(pi x), u1 = 0, T = 10, dt = 1e-3."""
    mesh = ref_system.mesh
    c0, v0 = project_initial_data(
        mesh, lambda x: np.cos(np.pi * x), lambda x: np.zeros_like(x)
    )
    traj = integrate(ref_system, Forcing(), c0, v0, T=10.0, dt=1e-3)
    records = record_trajectory(traj, ref_system, REFERENCE, ref_dc)
    return traj, records
