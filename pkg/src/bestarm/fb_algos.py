"""Fixed-budget static strategies and their error bounds.

A static strategy draws n1 and n2 = t - n1 samples from the two arms and
recommends the empirically best one (ties toward arm index 0, matching the
fixed-confidence strategies).  Optimal allocations: sigma1/(sigma1+sigma2)
for Gaussian arms, the g_alpha maximizer for exponential families.
Allocations are clamped to [1, t-1] so both arms are always observed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .complexity import g_alpha, optimal_alpha
from .dists import BERNOULLI_FAMILY, Bernoulli, ExpFamilyArm, Gaussian, sample_n
from .errors import DegenerateInstance, DomainError
from .instances import BanditInstance, require_two_armed
from .fc_algos import RunOutcome


@dataclass(frozen=True)
class StaticAllocation:
    n1: int
    n2: int

    def __post_init__(self):
        if self.n1 < 1 or self.n2 < 1:
            raise DomainError(f"both arms need at least one draw, got {self}")

    @property
    def budget(self) -> int:
        return self.n1 + self.n2

    @property
    def alpha(self) -> float:
        return self.n1 / self.budget


def _clamp_n1(n1: int, t: int) -> int:
    return min(max(n1, 1), t - 1)


def gaussian_allocation(sigma1: float, sigma2: float, t: int) -> StaticAllocation:
    """n1 = ceil(sigma1 t / (sigma1+sigma2)), clamped to [1, t-1]."""
    if t < 2:
        raise DomainError(f"budget must be at least 2, got {t}")
    if sigma1 <= 0 or sigma2 <= 0:
        raise DomainError("standard deviations must be positive")
    n1 = _clamp_n1(math.ceil(sigma1 * t / (sigma1 + sigma2)), t)
    return StaticAllocation(n1, t - n1)


def expfam_allocation(fam, theta1: float, theta2: float, t: int) -> StaticAllocation:
    """n1 = ceil(alpha* t) with alpha* the g_alpha maximizer, clamped."""
    if t < 2:
        raise DomainError(f"budget must be at least 2, got {t}")
    alpha, _ = optimal_alpha(fam, theta1, theta2)
    n1 = _clamp_n1(math.ceil(alpha * t), t)
    return StaticAllocation(n1, t - n1)


def uniform_allocation(t: int) -> StaticAllocation:
    if t < 2:
        raise DomainError(f"budget must be at least 2, got {t}")
    n1 = _clamp_n1(math.ceil(t / 2), t)
    return StaticAllocation(n1, t - n1)


def allocation_for(instance: BanditInstance, t: int, policy: str) -> StaticAllocation:
    """Resolve a named allocation policy ("uniform" or "optimal") for an instance."""
    require_two_armed(instance)
    if policy == "uniform":
        return uniform_allocation(t)
    if policy == "optimal":
        a1, a2 = instance.arms
        if a1.mean == a2.mean:
            raise DegenerateInstance("equal means: no optimal allocation")
        if isinstance(a1, Gaussian):
            return gaussian_allocation(a1.sigma, a2.sigma, t)
        if isinstance(a1, Bernoulli):
            return expfam_allocation(BERNOULLI_FAMILY, a1.theta, a2.theta, t)
        if isinstance(a1, ExpFamilyArm):
            return expfam_allocation(a1.family_desc, a1.theta, a2.theta, t)
        raise DomainError(f"unsupported family {instance.family!r}")
    raise DomainError(f"unknown allocation policy {policy!r}")


def run_static(instance: BanditInstance, alloc: StaticAllocation,
               rng: np.random.Generator) -> RunOutcome:
    """Draw the allocation, recommend the larger empirical mean (tie -> arm 0)."""
    require_two_armed(instance)
    a1, a2 = instance.arms
    m1 = float(np.mean(sample_n(a1, rng, alloc.n1)))
    m2 = float(np.mean(sample_n(a2, rng, alloc.n2)))
    rec = 0 if m1 >= m2 else 1
    return RunOutcome(
        tau=alloc.budget,
        recommended=rec,
        correct=(rec == instance.best_arm),
        draws_per_arm=(alloc.n1, alloc.n2),
        exhausted=False,
    )


def theoretical_error_bound(instance: BanditInstance, alloc: StaticAllocation) -> float:
    """Closed-form upper bound on the misidentification probability.

    Gaussian: exp(-(sigma1^2/n1 + sigma2^2/n2)^-1 (mu1-mu2)^2 / 2).
    Exponential families: exp(-(n1+n2) g_alpha(theta1, theta2)) with
    alpha = n1/(n1+n2); g_alpha is symmetric under swapping the arms
    together with alpha <-> 1-alpha, so the orientation does not matter.
    """
    require_two_armed(instance)
    a1, a2 = instance.arms
    if a1.mean == a2.mean:
        raise DegenerateInstance("equal means: error bound undefined")
    if isinstance(a1, Gaussian):
        var_hat = a1.variance / alloc.n1 + a2.variance / alloc.n2
        return math.exp(-((a1.mean - a2.mean) ** 2) / (2.0 * var_hat))
    if isinstance(a1, Bernoulli):
        fam, t1, t2 = BERNOULLI_FAMILY, a1.theta, a2.theta
    elif isinstance(a1, ExpFamilyArm):
        fam, t1, t2 = a1.family_desc, a1.theta, a2.theta
    else:
        raise DomainError(f"unsupported family {instance.family!r}")
    return math.exp(-alloc.budget * g_alpha(fam, t1, t2, alloc.alpha))
