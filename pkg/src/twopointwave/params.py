"""Problem constants: hypothesis checks and the derived estimate constants.

The continuous problem is

    u_tt - u_xx + K*u + lam*u_t = f(x, t)          on (0,1) x (0,T),
    u_x(0,t)  = h0*u(0,t) + lam0*u_t(0,t) + ht1*u(1,t) + lt1*u_t(1,t) + g0(t),
    -u_x(1,t) = h1*u(1,t) + lam1*u_t(1,t) + ht0*u(0,t) + lt0*u_t(0,t) + g1(t),

so each endpoint condition couples the displacement and velocity at *both*
endpoints.  All analysis constants used by the energy estimates (coercivity
bounds, the boundary-damping floor, the Lyapunov tuning constants) are
computed here from closed-form expressions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, InfeasibleError

__all__ = [
    "ProblemParams",
    "DerivedConstants",
    "Verdict",
    "validate_params",
    "derive_constants",
    "quadratic_form_lhs",
    "mu_min",
]


@dataclass(frozen=True)
class ProblemParams:
    """The ten scalar constants of the boundary-value problem.

    Attributes
    ----------
    h0, h1 : float
        Boundary stiffness at x=0 and x=1 (h0 > 0, h1 >= 0 required).
    lam0, lam1 : float
        Boundary damping at x=0 and x=1 (both > 0 required).
    ht0, ht1 : float
        Displacement cross-coupling: ht0 feeds u(0) into the x=1 condition,
        ht1 feeds u(1) into the x=0 condition.
    lt0, lt1 : float
        Velocity cross-coupling, same orientation as ht0/ht1.  Admissibility
        requires |lt0 + lt1| < 2*sqrt(lam0*lam1).
    K : float
        Zeroth-order (restoring) coefficient; K > 0 for decay scenarios.
    lam : float
        Interior damping; lam > 0 for decay scenarios.
    """

    h0: float
    h1: float
    lam0: float
    lam1: float
    ht0: float
    ht1: float
    lt0: float
    lt1: float
    K: float
    lam: float


@dataclass(frozen=True)
class Verdict:
    """Outcome of hypothesis validation: accepted flag plus named violations."""

    accepted: bool
    violations: tuple[str, ...]


@dataclass(frozen=True)
class DerivedConstants:
    """Every constant the energy estimates need, in dependency order.

    C0, C1 are the coercivity/continuity constants of the boundary-augmented
    bilinear form; mu_min is the positive-definiteness floor of the boundary
    damping quadratic form; eps1, eps2, delta are the Lyapunov tuning
    constants; beta1, beta2 sandwich the Lyapunov functional between
    multiples of the energy; htilde_budget is the slack left in the
    smallness condition on the displacement cross-couplings ht0, ht1.
    """

    C0: float
    C1: float
    mu_min: float
    mu0: float
    eps1: float
    eps2: float
    delta: float
    beta1: float
    beta2: float
    htilde_budget: float


def validate_params(p: ProblemParams, require_decay_hypotheses: bool = False) -> Verdict:
    """Check every hypothesis on the problem constants.

    Returns a verdict listing each violated inequality by name; never raises.
    With ``require_decay_hypotheses`` the positivity of K and lam is checked
    as well (needed by the decay theorem, not by well-posedness).
    """
    violations = []
    if not p.h0 > 0:
        violations.append("h0 > 0")
    if not p.h1 >= 0:
        violations.append("h1 >= 0")
    if not p.lam0 > 0:
        violations.append("lam0 > 0")
    if not p.lam1 > 0:
        violations.append("lam1 > 0")
    # Strict inequality: equality already breaks positive-definiteness of the
    # boundary damping form.
    if not (p.lt0 + p.lt1) ** 2 < 4.0 * p.lam0 * p.lam1:
        violations.append("|lt0 + lt1| < 2*sqrt(lam0*lam1)")
    if require_decay_hypotheses:
        if not p.K > 0:
            violations.append("K > 0")
        if not p.lam > 0:
            violations.append("lam > 0")
    return Verdict(accepted=not violations, violations=tuple(violations))


def mu_min(p: ProblemParams) -> float:
    """Positive floor of the boundary damping form.

    lam0*x^2 + lam1*y^2 + (lt0+lt1)*x*y >= mu_min/2 * (x^2 + y^2) for all
    x, y whenever |lt0 + lt1| < 2*sqrt(lam0*lam1).
    """
    disc = 4.0 * p.lam0 * p.lam1 - (p.lt0 + p.lt1) ** 2
    return 0.25 * disc * min(1.0 / p.lam0, 1.0 / p.lam1)


def quadratic_form_lhs(p: ProblemParams, x, y):
    """Boundary damping quadratic form lam0*x^2 + lam1*y^2 + (lt0+lt1)*x*y.

    Accepts scalars or numpy arrays.
    """
    return p.lam0 * x**2 + p.lam1 * y**2 + (p.lt0 + p.lt1) * x * y


# Default fraction of each open upper bound used when a tuning constant is
# not supplied: keeps runs reproducible while preserving strict inequalities.
_DEFAULT_FRACTION = 0.9


def derive_constants(
    p: ProblemParams,
    eps1: float | None = None,
    eps2: float | None = None,
    delta: float | None = None,
) -> DerivedConstants:
    """Compute the derived constants, choosing eps1, eps2, delta if omitted.

    The free constants default to 0.9 times their respective upper bounds,
    resolved in dependency order eps1 -> eps2 -> delta.  Results are
    deterministic: identical inputs give bit-identical outputs.

    Raises
    ------
    DomainError
        If the params fail the decay hypotheses, or a supplied tuning
        constant lies outside its admissible open range.
    InfeasibleError
        If no positive delta exists for the supplied eps1 (lam - eps1/C0 <= 0
        or the cross-damping bound collapses); cannot occur with defaults.
    """
    verdict = validate_params(p, require_decay_hypotheses=True)
    if not verdict.accepted:
        raise DomainError("params rejected: " + "; ".join(verdict.violations))

    C0 = min(1.0, p.h0)
    # Upper equivalence constant: the gradient/left-trace pair contributes
    # max(1, h0) by Cauchy-Schwarz and the right-trace term 2*h1 via the
    # sup-norm embedding.  (A plain max over the three coefficients is NOT
    # an upper bound: v = 1 gives ||v||_a^2 = h0 + h1 with ||v||_1^2 = 1.)
    C1 = max(1.0, p.h0) + 2.0 * p.h1
    mmin = mu_min(p)
    mu0 = min(C0, mmin)

    eps1_max = min(C0 * p.lam, mmin / 2.0)
    if eps1 is None:
        eps1 = _DEFAULT_FRACTION * eps1_max
    elif not eps1 > 0:
        raise DomainError("eps1 must be positive")
    elif not eps1 < eps1_max:
        if p.lam - eps1 / C0 <= 0:
            raise InfeasibleError(
                f"no positive delta: lam - eps1/C0 = {p.lam - eps1 / C0:g} <= 0"
            )
        raise DomainError(f"eps1 must lie in (0, {eps1_max:g})")

    eps2_max = C0 / 5.0
    if eps2 is None:
        eps2 = _DEFAULT_FRACTION * eps2_max
    elif not 0 < eps2 < eps2_max:
        raise DomainError(f"eps2 must lie in (0, {eps2_max:g})")

    lt_sq = p.lt0**2 + p.lt1**2
    # The cross-damping bound comes from a term that vanishes identically
    # when lt0 = lt1 = 0, so it imposes no constraint in that case.
    if lt_sq == 0.0:
        cross_bound = math.inf
    else:
        cross_bound = 2.0 * eps2 * (mmin / 2.0 - eps1) / lt_sq
    delta_max = min(C0 / 2.0, p.lam - eps1 / C0, cross_bound)
    if delta_max <= 0:
        raise InfeasibleError(f"no positive delta exists (upper bound {delta_max:g})")
    if delta is None:
        delta = _DEFAULT_FRACTION * delta_max
    elif not 0 < delta < delta_max:
        raise DomainError(f"delta must lie in (0, {delta_max:g})")

    beta1 = 1.0 - 2.0 * delta / C0
    beta2 = 1.0 + (2.0 * delta / C0) * (1.0 + p.lam + p.lam0 + p.lam1)
    htilde_budget = (
        delta * (1.0 - 5.0 * eps2 / C0)
        - (p.ht0**2 + p.ht1**2) / (eps1 * C0)
        - (2.0 * delta / C0) * abs(p.ht0 + p.ht1)
    )
    return DerivedConstants(
        C0=C0,
        C1=C1,
        mu_min=mmin,
        mu0=mu0,
        eps1=eps1,
        eps2=eps2,
        delta=delta,
        beta1=beta1,
        beta2=beta2,
        htilde_budget=htilde_budget,
    )
