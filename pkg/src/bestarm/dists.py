"""Arm distributions, divergences and sampling.

Three arm models are supported:

* ``Gaussian(mean, variance)`` -- known, possibly unequal variances;
* ``Bernoulli(mean)`` -- mean strictly inside (0, 1);
* ``ExpFamilyArm(family, theta)`` -- a canonical one-parameter exponential
  family with density exp(theta*x - b(theta)), described by an
  :class:`ExpFamilyDescriptor` carrying the log-partition ``b``, its
  derivatives and the inverse mean map.

All divergences use natural logarithms.  Bernoulli means are validated to
``[1e-9, 1-1e-9]`` at construction; empirical means produced downstream may
hit 0 or 1 and are handled by the ``0*log(0) = 0`` convention, never by
clamping observed data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import partial
from typing import Callable, Union

import numpy as np

from .errors import DomainError, FamilyMismatch

BERNOULLI_MEAN_MARGIN = 1e-9


# ---------------------------------------------------------------------------
# scalar/array divergence helpers
# ---------------------------------------------------------------------------

def binary_entropy(x):
    """Binary entropy -x log x - (1-x) log(1-x), with 0 log 0 = 0.

    Accepts scalars or numpy arrays in [0, 1]; raises DomainError outside.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0.0) or np.any(arr > 1.0):
        raise DomainError(f"binary_entropy argument outside [0, 1]: {x}")
    with np.errstate(divide="ignore", invalid="ignore"):
        out = -np.where(arr > 0.0, arr * np.log(arr), 0.0) \
              - np.where(arr < 1.0, (1.0 - arr) * np.log1p(-arr), 0.0)
    return float(out) if np.isscalar(x) or arr.ndim == 0 else out


def bernoulli_kl(x, y):
    """Binary relative entropy d(x, y) = x log(x/y) + (1-x) log((1-x)/(1-y)).

    ``x`` may touch 0 or 1 (empirical means; 0 log 0 = 0); ``y`` must lie
    strictly inside (0, 1).  Vectorized over numpy arrays.
    """
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if np.any(ya <= 0.0) or np.any(ya >= 1.0):
        raise DomainError("bernoulli_kl second argument must lie in (0, 1)")
    if np.any(xa < 0.0) or np.any(xa > 1.0):
        raise DomainError("bernoulli_kl first argument must lie in [0, 1]")
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(xa > 0.0, xa * np.log(xa / ya), 0.0) \
            + np.where(xa < 1.0, (1.0 - xa) * np.log((1.0 - xa) / (1.0 - ya)), 0.0)
    return float(out) if out.ndim == 0 else out


def gaussian_kl(mu1: float, var1: float, mu2: float, var2: float) -> float:
    """KL(N(mu1, var1) || N(mu2, var2)) in closed form."""
    ratio = var1 / var2
    return (mu1 - mu2) ** 2 / (2.0 * var2) + 0.5 * (ratio - 1.0 - math.log(ratio))


# ---------------------------------------------------------------------------
# one-parameter exponential families
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ExpFamilyDescriptor:
    """Canonical one-parameter exponential family exp(theta*x - b(theta)).

    ``log_partition`` must be strictly convex on the open natural domain
    ``theta_domain`` (variance_map > 0 everywhere), which makes ``mean_map``
    strictly increasing and ``nat_of_mean`` its inverse.  Descriptors are
    compared by ``family_id``.
    """

    family_id: str
    log_partition: Callable[[float], float]
    mean_map: Callable[[float], float]
    variance_map: Callable[[float], float]
    nat_of_mean: Callable[[float], float]
    theta_domain: tuple[float, float]
    mean_domain: tuple[float, float]
    known_variance: float | None = None  # sampling parameter for gaussian_kv

    def check_theta(self, theta: float) -> float:
        lo, hi = self.theta_domain
        if not (lo < theta < hi) or not math.isfinite(theta):
            raise DomainError(
                f"theta={theta} outside the open natural domain {self.theta_domain} "
                f"of family {self.family_id}")
        return float(theta)

    def check_mean(self, mu: float) -> float:
        lo, hi = self.mean_domain
        if not (lo < mu < hi) or not math.isfinite(mu):
            raise DomainError(
                f"mean={mu} outside the open mean range {self.mean_domain} "
                f"of family {self.family_id}")
        return float(mu)

    def kl(self, theta1: float, theta2: float) -> float:
        """KL between members, Bregman form b(t2)-b(t1)-b'(t1)(t2-t1)."""
        b = self.log_partition
        return b(theta2) - b(theta1) - self.mean_map(theta1) * (theta2 - theta1)

    def same_family(self, other: "ExpFamilyDescriptor") -> bool:
        return self.family_id == other.family_id


def _bern_b(theta: float) -> float:
    # log(1 + e^theta), overflow-safe
    if theta > 35.0:
        return theta + math.log1p(math.exp(-theta))
    return math.log1p(math.exp(theta))


def _bern_mean(theta: float) -> float:
    if theta >= 0:
        return 1.0 / (1.0 + math.exp(-theta))
    e = math.exp(theta)
    return e / (1.0 + e)


def _bern_var(theta: float) -> float:
    m = _bern_mean(theta)
    return m * (1.0 - m)


def _bern_nat(mu: float) -> float:
    return math.log(mu / (1.0 - mu))


def _gauss_b(theta: float, variance: float) -> float:
    return 0.5 * variance * theta * theta


def _gauss_mean(theta: float, variance: float) -> float:
    return variance * theta


def _gauss_var(theta: float, variance: float) -> float:
    return variance


def _gauss_nat(mu: float, variance: float) -> float:
    return mu / variance


def _expo_b(theta: float) -> float:
    return -math.log(-theta)


def _expo_mean(theta: float) -> float:
    return -1.0 / theta


def _expo_var(theta: float) -> float:
    return 1.0 / (theta * theta)


def _expo_nat(mu: float) -> float:
    return -1.0 / mu


BERNOULLI_FAMILY = ExpFamilyDescriptor(
    family_id="bernoulli",
    log_partition=_bern_b,
    mean_map=_bern_mean,
    variance_map=_bern_var,
    nat_of_mean=_bern_nat,
    theta_domain=(-math.inf, math.inf),
    mean_domain=(0.0, 1.0),
)

#: Exponential distributions with rate -theta; b is Fenchel self-conjugate
#: (up to affine terms), which makes the reversed and plain Chernoff
#: quantities coincide -- useful as an invariant probe.
EXPONENTIAL_FAMILY = ExpFamilyDescriptor(
    family_id="exponential",
    log_partition=_expo_b,
    mean_map=_expo_mean,
    variance_map=_expo_var,
    nat_of_mean=_expo_nat,
    theta_domain=(-math.inf, 0.0),
    mean_domain=(0.0, math.inf),
)


def gaussian_family(variance: float) -> ExpFamilyDescriptor:
    """Gaussian location family with known variance, as an exponential family."""
    if not (variance > 0.0) or not math.isfinite(variance):
        raise DomainError(f"variance must be positive, got {variance}")
    return ExpFamilyDescriptor(
        family_id=f"gaussian_kv({variance:.17g})",
        log_partition=partial(_gauss_b, variance=variance),
        mean_map=partial(_gauss_mean, variance=variance),
        variance_map=partial(_gauss_var, variance=variance),
        nat_of_mean=partial(_gauss_nat, variance=variance),
        theta_domain=(-math.inf, math.inf),
        mean_domain=(-math.inf, math.inf),
        known_variance=variance,
    )


def nat_to_mean(fam: ExpFamilyDescriptor, theta: float) -> float:
    """Mean map b'(theta); DomainError outside the open natural domain."""
    return fam.mean_map(fam.check_theta(theta))


def mean_to_nat(fam: ExpFamilyDescriptor, mu: float) -> float:
    """Inverse mean map in closed form per family."""
    return fam.nat_of_mean(fam.check_mean(mu))


# ---------------------------------------------------------------------------
# arm distributions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Gaussian:
    mean: float
    variance: float

    def __post_init__(self):
        if not math.isfinite(self.mean):
            raise DomainError(f"Gaussian mean must be finite, got {self.mean}")
        if not (self.variance > 0.0) or not math.isfinite(self.variance):
            raise DomainError(f"Gaussian variance must be > 0, got {self.variance}")

    @property
    def family(self) -> str:
        return "gaussian"

    @property
    def sigma(self) -> float:
        return math.sqrt(self.variance)


@dataclass(frozen=True)
class Bernoulli:
    mean: float

    def __post_init__(self):
        lo = BERNOULLI_MEAN_MARGIN
        if not (lo <= self.mean <= 1.0 - lo):
            raise DomainError(
                f"Bernoulli mean must lie in [{lo}, {1 - lo}], got {self.mean}")

    @property
    def family(self) -> str:
        return "bernoulli"

    @property
    def theta(self) -> float:
        return _bern_nat(self.mean)


@dataclass(frozen=True)
class ExpFamilyArm:
    family_desc: ExpFamilyDescriptor
    theta: float

    def __post_init__(self):
        self.family_desc.check_theta(self.theta)

    @property
    def family(self) -> str:
        return self.family_desc.family_id

    @property
    def mean(self) -> float:
        return self.family_desc.mean_map(self.theta)


ArmDistribution = Union[Gaussian, Bernoulli, ExpFamilyArm]


def same_family(p: ArmDistribution, q: ArmDistribution) -> bool:
    if type(p) is not type(q):
        return False
    if isinstance(p, ExpFamilyArm):
        return p.family_desc.same_family(q.family_desc)
    return True


def sample_n(dist: ArmDistribution, rng: np.random.Generator, n: int) -> np.ndarray:
    """n i.i.d. draws from one arm (float array)."""
    if isinstance(dist, Gaussian):
        return dist.mean + dist.sigma * rng.standard_normal(n)
    if isinstance(dist, Bernoulli):
        return (rng.random(n) < dist.mean).astype(float)
    if isinstance(dist, ExpFamilyArm):
        fid = dist.family_desc.family_id
        if fid == "bernoulli":
            return (rng.random(n) < dist.mean).astype(float)
        if fid.startswith("gaussian_kv"):
            sd = math.sqrt(dist.family_desc.known_variance)
            return dist.mean + sd * rng.standard_normal(n)
        if fid == "exponential":
            return rng.exponential(scale=dist.mean, size=n)
        raise DomainError(f"no sampler for exponential family {fid!r}")
    raise FamilyMismatch(f"not an arm distribution: {dist!r}")


def sample(dist: ArmDistribution, rng: np.random.Generator) -> float:
    """One draw from ``dist``, advancing ``rng``."""
    return float(sample_n(dist, rng, 1)[0])


def kl(p: ArmDistribution, q: ArmDistribution) -> float:
    """KL divergence K(p, q) between two arms of the same family.

    Gaussian: (mu1-mu2)^2/(2 var2) + [var1/var2 - 1 - log(var1/var2)]/2.
    Bernoulli: binary relative entropy d(mu1, mu2).
    Exponential family: Bregman form of the log-partition.
    """
    if not same_family(p, q):
        raise FamilyMismatch(f"cannot take KL between {p!r} and {q!r}")
    if isinstance(p, Gaussian):
        return gaussian_kl(p.mean, p.variance, q.mean, q.variance)
    if isinstance(p, Bernoulli):
        return float(bernoulli_kl(p.mean, q.mean))
    return p.family_desc.kl(p.theta, q.theta)
