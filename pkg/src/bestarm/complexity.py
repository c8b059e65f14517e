"""Informational complexity of two-armed best-arm identification.

Four quantities govern the problem for a two-armed instance nu with
distinct means:

* ``c_star_fc`` -- the fixed-confidence complexity: the common value of
  K(nu_1, nu') = K(nu_2, nu') at the crossing distribution nu' between the
  arms ("reversed Chernoff" quantity).  Sample-complexity lower bounds
  scale like log(1/(2 delta)) / c_star_fc.
* ``i_star_fc`` -- its uniform-sampling counterpart, the average of the two
  divergences to the mean-midpoint distribution.
* ``c_star_fb`` -- the fixed-budget complexity: the Chernoff information,
  i.e. the common value of K(nu', nu_1) = K(nu', nu_2) at the crossing.
  Error exponents of consistent strategies are capped by it.
* ``i_star_fb`` -- its uniform-sampling counterpart, evaluated at the
  natural-parameter midpoint.

For Gaussian arms with known variances all four have closed forms; for
one-parameter exponential families the crossings are found by bisection
(the two divergences are monotone in opposite directions across the
bracket formed by the arm parameters, so a sign change is guaranteed).
Averages use the analytic midpoint identities, which stationarity makes
exact, rather than a generic infimum search.

Equal means are rejected with DegenerateInstance: the complexities are
undefined there and the instance class excludes the tie.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .dists import (
    BERNOULLI_FAMILY,
    Bernoulli,
    ExpFamilyArm,
    ExpFamilyDescriptor,
    Gaussian,
    bernoulli_kl,
    gaussian_family,
    mean_to_nat,
)
from .errors import DegenerateInstance, DomainError, SolverError
from .instances import BanditInstance, require_two_armed

BISECT_REL_TOL = 1e-12
BISECT_MAX_ITER = 200
GOLDEN_TOL = 1e-10
_CHECK_TOL = 1e-8


def bisect_root(f: Callable[[float], float], lo: float, hi: float,
                rel_tol: float = BISECT_REL_TOL,
                max_iter: int = BISECT_MAX_ITER) -> float:
    """Root of f on [lo, hi] by bisection; requires a sign change.

    The interval is shrunk until its width falls below
    rel_tol * max(|lo|, |hi|, 1); exceeding ``max_iter`` iterations raises
    SolverError.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise SolverError(f"no sign change on bracket [{lo}, {hi}]")
    scale = max(abs(lo), abs(hi), 1.0)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= rel_tol * scale:
            return mid
        fm = f(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
    raise SolverError(f"bisection did not converge in {max_iter} iterations")


def _two_arms(instance: BanditInstance):
    require_two_armed(instance)
    a1, a2 = instance.arms
    if a1.mean == a2.mean:
        raise DegenerateInstance("equal means: two-armed complexity undefined")
    return a1, a2


def _expfam_params(instance: BanditInstance) -> tuple[ExpFamilyDescriptor, float, float]:
    """Descriptor and natural parameters for a non-Gaussian two-armed instance."""
    a1, a2 = instance.arms
    if isinstance(a1, Bernoulli):
        return BERNOULLI_FAMILY, a1.theta, a2.theta
    if isinstance(a1, ExpFamilyArm):
        return a1.family_desc, a1.theta, a2.theta
    raise DomainError(f"unsupported family {instance.family!r}")


def _gaussian_crossing_mean(a1: Gaussian, a2: Gaussian) -> float:
    # common point mu with (mu1-mu)/sigma1 = (mu-mu2)/sigma2; the symmetric
    # midpoint when the variances agree
    s1, s2 = a1.sigma, a2.sigma
    return (s2 * a1.mean + s1 * a2.mean) / (s1 + s2)


def c_star_fc(instance: BanditInstance) -> tuple[float, float]:
    """Fixed-confidence complexity and its crossing parameter.

    Gaussian: (mu1-mu2)^2 / (2 (sigma1+sigma2)^2), crossing reported as the
    sigma-weighted mean point.  Exponential families: solve
    Kb(theta1, theta_) = Kb(theta2, theta_) by bisection on the mean
    parameter; the crossing is reported as a natural parameter.
    """
    a1, a2 = _two_arms(instance)
    if isinstance(a1, Gaussian):
        value = (a1.mean - a2.mean) ** 2 / (2.0 * (a1.sigma + a2.sigma) ** 2)
        return value, _gaussian_crossing_mean(a1, a2)
    fam, t1, t2 = _expfam_params(instance)
    mu1, mu2 = fam.mean_map(t1), fam.mean_map(t2)
    lo, hi = min(mu1, mu2), max(mu1, mu2)

    def gap(mu: float) -> float:
        t = fam.nat_of_mean(mu)
        return fam.kl(t1, t) - fam.kl(t2, t)

    mu_star = bisect_root(gap, lo, hi)
    theta_star = fam.nat_of_mean(mu_star)
    return fam.kl(t1, theta_star), theta_star


def i_star_fc(instance: BanditInstance) -> float:
    """Uniform-sampling fixed-confidence rate: average KL to the mean midpoint."""
    a1, a2 = _two_arms(instance)
    if isinstance(a1, Gaussian):
        return (a1.mean - a2.mean) ** 2 / (4.0 * (a1.variance + a2.variance))
    fam, t1, t2 = _expfam_params(instance)
    mid = mean_to_nat(fam, 0.5 * (fam.mean_map(t1) + fam.mean_map(t2)))
    return 0.5 * (fam.kl(t1, mid) + fam.kl(t2, mid))


def c_star_fb(instance: BanditInstance) -> tuple[float, float]:
    """Fixed-budget complexity (Chernoff information) and its crossing.

    Exponential families: solve Kb(theta_, theta1) = Kb(theta_, theta2) by
    bisection on the natural parameter.  Gaussian instances return the same
    value as :func:`c_star_fc` (the KL is symmetric in the means when the
    variances are held fixed).
    """
    a1, a2 = _two_arms(instance)
    if isinstance(a1, Gaussian):
        value = (a1.mean - a2.mean) ** 2 / (2.0 * (a1.sigma + a2.sigma) ** 2)
        return value, _gaussian_crossing_mean(a1, a2)
    fam, t1, t2 = _expfam_params(instance)
    lo, hi = min(t1, t2), max(t1, t2)

    def gap(theta: float) -> float:
        return fam.kl(theta, t1) - fam.kl(theta, t2)

    theta_star = bisect_root(gap, lo, hi)
    return fam.kl(theta_star, t1), theta_star


def i_star_fb(instance: BanditInstance) -> float:
    """Uniform-sampling fixed-budget exponent: KLs from the natural midpoint."""
    a1, a2 = _two_arms(instance)
    if isinstance(a1, Gaussian):
        # symmetric KL in the means makes this coincide with i_star_fc
        return (a1.mean - a2.mean) ** 2 / (4.0 * (a1.variance + a2.variance))
    fam, t1, t2 = _expfam_params(instance)
    mid = 0.5 * (t1 + t2)
    return 0.5 * (fam.kl(mid, t1) + fam.kl(mid, t2))


def g_alpha(fam: ExpFamilyDescriptor, theta1: float, theta2: float, alpha: float) -> float:
    """Error exponent of the static allocation drawing a fraction alpha from arm 1.

    g_alpha = alpha*Kb(mix, theta1) + (1-alpha)*Kb(mix, theta2) with
    mix = alpha*theta1 + (1-alpha)*theta2; strictly concave in alpha and
    vanishing at the boundary.
    """
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    if theta1 == theta2:
        raise DegenerateInstance("equal natural parameters")
    fam.check_theta(theta1)
    fam.check_theta(theta2)
    mix = alpha * theta1 + (1.0 - alpha) * theta2
    return alpha * fam.kl(mix, theta1) + (1.0 - alpha) * fam.kl(mix, theta2)


def _golden_max(f: Callable[[float], float], lo: float, hi: float,
                tol: float) -> tuple[float, float]:
    # golden-section search for the max of a unimodal f on [lo, hi]
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def _g_alpha_slope(fam: ExpFamilyDescriptor, theta1: float, theta2: float,
                   alpha: float) -> float:
    # d g_alpha / d alpha = Kb(mix, theta1) - Kb(mix, theta2) (the mix-term
    # derivatives cancel); strictly decreasing in alpha by convexity of b
    mix = alpha * theta1 + (1.0 - alpha) * theta2
    return fam.kl(mix, theta1) - fam.kl(mix, theta2)


def optimal_alpha(fam: ExpFamilyDescriptor, theta1: float, theta2: float) -> tuple[float, float]:
    """Maximize g_alpha over alpha in (0, 1).

    Golden-section search to 1e-10 on alpha, polished by bisecting the
    stationarity gap Kb(mix, theta1) - Kb(mix, theta2) (golden-section alone
    locates a flat quadratic maximum only to ~sqrt(machine eps)).  The
    maximizer satisfies alpha*theta1 + (1-alpha)*theta2 = theta^ (the
    Chernoff crossing) and g(alpha*) equals the Chernoff information; both
    identities are verified to 1e-8 and a violation raises SolverError.
    """
    if theta1 == theta2:
        raise DegenerateInstance("equal natural parameters")
    fam.check_theta(theta1)
    fam.check_theta(theta2)
    alpha, g_value = _golden_max(lambda a: g_alpha(fam, theta1, theta2, a),
                                 1e-12, 1.0 - 1e-12, GOLDEN_TOL)
    lo = max(alpha - 1e-5, 1e-12)
    hi = min(alpha + 1e-5, 1.0 - 1e-12)
    slope = lambda a: _g_alpha_slope(fam, theta1, theta2, a)
    if slope(lo) > 0.0 > slope(hi):
        alpha = bisect_root(slope, lo, hi)
        g_value = g_alpha(fam, theta1, theta2, alpha)
    cb_value, theta_star = _chernoff_for(fam, theta1, theta2)
    mix = alpha * theta1 + (1.0 - alpha) * theta2
    scale = max(abs(theta1), abs(theta2), 1.0)
    if abs(mix - theta_star) > _CHECK_TOL * scale:
        raise SolverError(
            f"optimal_alpha crossing check failed: mix={mix}, theta*={theta_star}")
    if abs(g_value - cb_value) > _CHECK_TOL * max(cb_value, 1.0):
        raise SolverError(
            f"optimal_alpha value check failed: g={g_value}, chernoff={cb_value}")
    return alpha, g_value


def _chernoff_for(fam: ExpFamilyDescriptor, theta1: float, theta2: float) -> tuple[float, float]:
    lo, hi = min(theta1, theta2), max(theta1, theta2)
    theta_star = bisect_root(lambda t: fam.kl(t, theta1) - fam.kl(t, theta2), lo, hi)
    return fam.kl(theta_star, theta1), theta_star


def i_star_bernoulli(x, y):
    """I_* for Bernoulli means, from the average-KL definition; array-safe.

    Equals H((x+y)/2) - [H(x)+H(y)]/2 with H the binary entropy (verified
    numerically; a published variant showing H(x/2), H(y/2) does not match
    and is a suspected typo).  Arguments may touch 0 or 1, where the
    0*log(0)=0 convention applies; I_*(x, x) = 0.
    """
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    mid = 0.5 * (xa + ya)
    interior = (mid > 0.0) & (mid < 1.0) & (xa != ya)
    mid_safe = np.where(interior, mid, 0.5)
    out = np.where(
        interior,
        0.5 * (bernoulli_kl(xa, mid_safe) + bernoulli_kl(ya, mid_safe)),
        0.0,
    )
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class TwoArmedComplexityReport:
    """All two-armed complexity quantities for one instance.

    ``theta_star_reversed``/``theta_star_chernoff`` hold the crossing points
    (natural parameters for exponential families, the sigma-weighted mean
    point for Gaussian instances).  ``kappa_C_lower`` = 1/c_star_fc is the
    lower bound on the fixed-confidence complexity; ``kappa_B`` = 1/c_star_fb
    is the fixed-budget complexity.
    """

    c_star_fc: float
    i_star_fc: float
    c_star_fb: float
    i_star_fb: float
    theta_star_reversed: float
    theta_star_chernoff: float
    kappa_C_lower: float
    kappa_B: float

    def as_dict(self) -> dict[str, float]:
        return {
            "c_star_fc": self.c_star_fc,
            "i_star_fc": self.i_star_fc,
            "c_star_fb": self.c_star_fb,
            "i_star_fb": self.i_star_fb,
            "theta_star_reversed": self.theta_star_reversed,
            "theta_star_chernoff": self.theta_star_chernoff,
            "kappa_C_lower": self.kappa_C_lower,
            "kappa_B": self.kappa_B,
        }


def complexity_report(instance: BanditInstance) -> TwoArmedComplexityReport:
    c_fc, theta_rev = c_star_fc(instance)
    c_fb, theta_ch = c_star_fb(instance)
    return TwoArmedComplexityReport(
        c_star_fc=c_fc,
        i_star_fc=i_star_fc(instance),
        c_star_fb=c_fb,
        i_star_fb=i_star_fb(instance),
        theta_star_reversed=theta_rev,
        theta_star_chernoff=theta_ch,
        kappa_C_lower=1.0 / c_fc,
        kappa_B=1.0 / c_fb,
    )
