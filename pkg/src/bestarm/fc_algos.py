"""Fixed-confidence strategies for two-armed instances.

All strategies stop on a data-dependent rule governed by an exploration
rate beta(t, delta) and recommend the empirically best arm (ties broken
toward the lowest index, deterministically):

* ``run_elimination`` -- paired uniform sampling of a common-variance
  Gaussian instance; stops once |sum of paired differences| exceeds
  sqrt(2 sigma^2 t beta(t, delta)).  Also usable for any bounded/
  subgaussian arms via an explicit ``sigma`` proxy (bounded supports in
  [0,1] are 1/4-subgaussian, sigma=1/2).
* ``run_alpha_elimination`` -- deterministic schedule keeping
  N1(t) = ceil(alpha*t); stops once the empirical mean difference exceeds
  sqrt(2 sigma_t^2(alpha) beta(t, delta)) with
  sigma_t^2 = sigma1^2/N1 + sigma2^2/N2.  alpha=None resolves to
  sigma1/(sigma1+sigma2), the allocation that attains the two-armed
  complexity.
* ``run_sglrt`` -- uniform sampling of Bernoulli arms; at even t the
  generalized-likelihood-ratio statistic t * I_*(mu1_hat, mu2_hat) is
  compared to beta(t, delta).
* ``run_sprt_oracle`` -- the known-gap sequential probability ratio test
  (only the sign of the gap is unknown); stops when the exact Gaussian
  log-likelihood ratio (Delta/sigma^2) * sum of paired differences leaves
  (-log(1/delta), log(1/delta)).

Runs are pure given their Generator; a safety cap ``tau_max`` (default
ceil(50 log(1/delta) / I_*(nu))) bounds the sampling and is surfaced via
the ``exhausted`` flag, never as an error.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .complexity import i_star_bernoulli, i_star_fc
from .dists import Gaussian, sample_n
from .errors import DomainError
from .instances import BanditInstance, require_two_armed

_CHUNK0 = 64
_CHUNK_MAX = 4096

#: Above this delta the iterated-log rate's "delta small enough" guarantee
#: is undocumented; evaluation proceeds with a warning.
ITERATED_LOG_SAFE_DELTA = 0.01


class ExplorationRate(str, Enum):
    """The exploration-rate formulas beta(t, delta), natural logs throughout.

    ROBBINS_LOG_T       ((t+1)/t) log((t+1)/(2 delta))
    ITERATED_LOG        log(1/delta) + (3/4) loglog(1/delta)
                        + (3/2) log(1 + log(t/2)); needs delta < 1/e,
                        provably safe only for small delta
    ALPHA_ELIM          log(t/delta) + 2 loglog(6t)
    SGLRT               2 log(t (log 3t)^2 / delta)
    CONJECTURED_LOG_LOG log((log t + 1)/delta); conjectured safe, never
                        documented as guaranteed
    PLAIN_LOG           log(1/delta); the fixed-sample threshold
    """

    ROBBINS_LOG_T = "robbins"
    ITERATED_LOG = "iterated-log"
    ALPHA_ELIM = "alpha-elim"
    SGLRT = "sglrt"
    CONJECTURED_LOG_LOG = "conjectured"
    PLAIN_LOG = "plain-log"


def validate_rate(rate: ExplorationRate, delta: float) -> None:
    """Reject out-of-domain (rate, delta) pairs; warn on undocumented regimes."""
    if not (0.0 < delta < 1.0):
        raise DomainError(f"delta must lie in (0, 1), got {delta}")
    if rate is ExplorationRate.ITERATED_LOG:
        if delta >= 1.0 / math.e:
            raise DomainError(
                f"the iterated-log rate needs delta < 1/e, got {delta}")
        if delta > ITERATED_LOG_SAFE_DELTA:
            warnings.warn(
                f"iterated-log rate: delta={delta} exceeds the documented "
                f"{ITERATED_LOG_SAFE_DELTA} threshold; the delta-PAC guarantee "
                "is proved only for delta small enough",
                RuntimeWarning, stacklevel=3)


def _rate_values(rate: ExplorationRate, t: np.ndarray, delta: float) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if rate is ExplorationRate.ROBBINS_LOG_T:
        return (t + 1.0) / t * np.log((t + 1.0) / (2.0 * delta))
    if rate is ExplorationRate.ITERATED_LOG:
        z = math.log(1.0 / delta)
        return z + 0.75 * math.log(z) + 1.5 * np.log1p(np.log(t / 2.0))
    if rate is ExplorationRate.ALPHA_ELIM:
        return np.log(t / delta) + 2.0 * np.log(np.log(6.0 * t))
    if rate is ExplorationRate.SGLRT:
        return 2.0 * np.log(t * np.log(3.0 * t) ** 2 / delta)
    if rate is ExplorationRate.CONJECTURED_LOG_LOG:
        return np.log((np.log(t) + 1.0) / delta)
    if rate is ExplorationRate.PLAIN_LOG:
        return np.full_like(t, math.log(1.0 / delta))
    raise DomainError(f"unknown exploration rate {rate!r}")


def eval_rate(rate: ExplorationRate, t, delta: float):
    """beta(t, delta) for t >= 2 (scalar or array), with domain validation."""
    validate_rate(rate, delta)
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 2):
        raise DomainError("exploration rates are defined for t >= 2")
    out = _rate_values(rate, arr, delta)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class RunOutcome:
    """One algorithm execution: total draws, recommendation and bookkeeping."""

    tau: int
    recommended: int
    correct: bool
    draws_per_arm: tuple[int, int]
    exhausted: bool


def default_tau_max(instance: BanditInstance, delta: float) -> int:
    """Safety cap ceil(50 log(1/delta) / I_*(nu)) on the total draw count."""
    return int(math.ceil(50.0 * math.log(1.0 / delta) / i_star_fc(instance)))


def _outcome(instance: BanditInstance, tau: int, recommended: int,
             draws: tuple[int, int], exhausted: bool) -> RunOutcome:
    return RunOutcome(
        tau=tau,
        recommended=recommended,
        correct=(recommended == instance.best_arm),
        draws_per_arm=draws,
        exhausted=exhausted,
    )


def _equal_variance_sigma(instance: BanditInstance) -> float:
    a1, a2 = instance.arms
    if not isinstance(a1, Gaussian):
        raise DomainError(
            "this strategy needs Gaussian arms (or an explicit subgaussian sigma)")
    if a1.variance != a2.variance:
        raise DomainError("this strategy needs equal known variances")
    return a1.sigma


def run_elimination(instance: BanditInstance, delta: float, rate: ExplorationRate,
                    rng: np.random.Generator, tau_max: int | None = None,
                    sigma: float | None = None) -> RunOutcome:
    """Paired-sampling elimination; see the module docstring for the rule."""
    require_two_armed(instance)
    if not (0.0 < delta <= 0.15):
        raise DomainError(f"elimination requires delta in (0, 0.15], got {delta}")
    validate_rate(rate, delta)
    if sigma is None:
        sigma = _equal_variance_sigma(instance)
    elif not sigma > 0:
        raise DomainError(f"sigma must be positive, got {sigma}")
    if tau_max is None:
        tau_max = default_tau_max(instance, delta)
    a1, a2 = instance.arms
    k_cap = max(1, tau_max // 2)

    running = 0.0
    k_done = 0
    chunk = _CHUNK0
    while k_done < k_cap:
        n = min(chunk, k_cap - k_done)
        x = sample_n(a1, rng, n)
        y = sample_n(a2, rng, n)
        sums = running + np.cumsum(x - y)
        ks = np.arange(k_done + 1, k_done + n + 1)
        ts = 2 * ks
        thresholds = np.sqrt(2.0 * sigma**2 * ts * _rate_values(rate, ts, delta))
        hits = np.abs(sums) > thresholds
        if hits.any():
            i = int(np.argmax(hits))
            k_stop = int(ks[i])
            rec = 0 if sums[i] >= 0.0 else 1
            return _outcome(instance, 2 * k_stop, rec, (k_stop, k_stop), False)
        running = float(sums[-1])
        k_done += n
        chunk = min(2 * chunk, _CHUNK_MAX)
    rec = 0 if running >= 0.0 else 1
    return _outcome(instance, 2 * k_cap, rec, (k_cap, k_cap), True)


def run_alpha_elimination(instance: BanditInstance, delta: float,
                          rate: ExplorationRate, rng: np.random.Generator,
                          alpha: float | None = None,
                          tau_max: int | None = None) -> RunOutcome:
    """Deterministic-schedule elimination with N1(t) = ceil(alpha*t)."""
    require_two_armed(instance)
    a1, a2 = instance.arms
    if not (isinstance(a1, Gaussian) and isinstance(a2, Gaussian)):
        raise DomainError("alpha-elimination needs Gaussian arms with known variances")
    validate_rate(rate, delta)
    if alpha is None:
        alpha = a1.sigma / (a1.sigma + a2.sigma)
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    if tau_max is None:
        tau_max = default_tau_max(instance, delta)
    var1, var2 = a1.variance, a2.variance

    t_done = 0
    n1_done = 0
    sum1 = 0.0
    sum2 = 0.0
    chunk = _CHUNK0
    while t_done < tau_max:
        n = min(chunk, tau_max - t_done)
        ts = np.arange(t_done + 1, t_done + n + 1)
        n1 = np.ceil(alpha * ts).astype(np.int64)
        n2 = ts - n1
        takes_arm1 = np.empty(n, dtype=bool)
        takes_arm1[0] = n1[0] != n1_done
        takes_arm1[1:] = n1[1:] != n1[:-1]
        c1 = int(n1[-1] - n1_done)
        inc1 = np.zeros(n)
        inc2 = np.zeros(n)
        if c1 > 0:
            inc1[takes_arm1] = sample_n(a1, rng, c1)
        if n - c1 > 0:
            inc2[~takes_arm1] = sample_n(a2, rng, n - c1)
        cum1 = sum1 + np.cumsum(inc1)
        cum2 = sum2 + np.cumsum(inc2)
        testable = (n1 >= 1) & (n2 >= 1) & (ts >= 2)
        with np.errstate(divide="ignore", invalid="ignore"):
            diff = np.abs(cum1 / n1 - cum2 / np.maximum(n2, 1))
            var_t = var1 / np.maximum(n1, 1) + var2 / np.maximum(n2, 1)
            thr = np.sqrt(2.0 * var_t * _rate_values(rate, np.maximum(ts, 2), delta))
        hits = testable & (diff > thr)
        if hits.any():
            i = int(np.argmax(hits))
            t_stop, n1_stop = int(ts[i]), int(n1[i])
            rec = 0 if cum1[i] / n1[i] >= cum2[i] / n2[i] else 1
            return _outcome(instance, t_stop, rec, (n1_stop, t_stop - n1_stop), False)
        sum1, sum2 = float(cum1[-1]), float(cum2[-1])
        t_done += n
        n1_done = int(n1[-1])
        chunk = min(2 * chunk, _CHUNK_MAX)
    m1 = sum1 / max(n1_done, 1)
    m2 = sum2 / max(t_done - n1_done, 1)
    rec = 0 if m1 >= m2 else 1
    return _outcome(instance, t_done, rec, (n1_done, t_done - n1_done), True)


def run_sglrt(instance: BanditInstance, delta: float, rate: ExplorationRate,
              rng: np.random.Generator, tau_max: int | None = None) -> RunOutcome:
    """Sequential GLRT on Bernoulli arms, uniform sampling, even-t stopping."""
    require_two_armed(instance)
    if not instance.is_bernoulli:
        raise DomainError("the sequential GLRT is defined for Bernoulli arms")
    if not (0.0 < delta < 1.0):
        raise DomainError(f"delta must lie in (0, 1), got {delta}")
    validate_rate(rate, delta)
    if tau_max is None:
        tau_max = default_tau_max(instance, delta)
    a1, a2 = instance.arms
    k_cap = max(1, tau_max // 2)

    s1 = 0
    s2 = 0
    k_done = 0
    chunk = _CHUNK0
    while k_done < k_cap:
        n = min(chunk, k_cap - k_done)
        x = sample_n(a1, rng, n)
        y = sample_n(a2, rng, n)
        cum1 = s1 + np.cumsum(x)
        cum2 = s2 + np.cumsum(y)
        ks = np.arange(k_done + 1, k_done + n + 1)
        ts = 2 * ks
        m1 = cum1 / ks
        m2 = cum2 / ks
        stats = ts * i_star_bernoulli(m1, m2)
        hits = stats > _rate_values(rate, ts, delta)
        if hits.any():
            i = int(np.argmax(hits))
            k_stop = int(ks[i])
            rec = 0 if m1[i] >= m2[i] else 1
            return _outcome(instance, 2 * k_stop, rec, (k_stop, k_stop), False)
        s1, s2 = float(cum1[-1]), float(cum2[-1])
        k_done += n
        chunk = min(2 * chunk, _CHUNK_MAX)
    rec = 0 if s1 >= s2 else 1
    return _outcome(instance, 2 * k_cap, rec, (k_cap, k_cap), True)


def run_sprt_oracle(instance: BanditInstance, delta: float,
                    rng: np.random.Generator, tau_max: int | None = None,
                    use_paper_statistic: bool = False) -> RunOutcome:
    """Known-gap SPRT on a common-variance Gaussian instance.

    The exact paired log-likelihood ratio is (Delta/sigma^2) * sum(X_s - Y_s);
    ``use_paper_statistic`` drops the 1/sigma^2 factor to match the plotted
    statistic |Delta * sum(X_s - Y_s)| of the reference experiments.
    """
    require_two_armed(instance)
    if not (0.0 < delta < 1.0):
        raise DomainError(f"delta must lie in (0, 1), got {delta}")
    sigma = _equal_variance_sigma(instance)
    if tau_max is None:
        tau_max = default_tau_max(instance, delta)
    a1, a2 = instance.arms
    gap = abs(a1.mean - a2.mean)
    if gap == 0.0:
        raise DomainError("the SPRT oracle needs a nonzero gap")
    coef = gap if use_paper_statistic else gap / sigma**2
    threshold = math.log(1.0 / delta)
    k_cap = max(1, tau_max // 2)

    running = 0.0
    k_done = 0
    chunk = _CHUNK0
    while k_done < k_cap:
        n = min(chunk, k_cap - k_done)
        x = sample_n(a1, rng, n)
        y = sample_n(a2, rng, n)
        llr = running + coef * np.cumsum(x - y)
        hits = np.abs(llr) > threshold
        if hits.any():
            i = int(np.argmax(hits))
            k_stop = k_done + i + 1
            rec = 0 if llr[i] >= 0.0 else 1
            return _outcome(instance, 2 * k_stop, rec, (k_stop, k_stop), False)
        running = float(llr[-1])
        k_done += n
        chunk = min(2 * chunk, _CHUNK_MAX)
    rec = 0 if running >= 0.0 else 1
    return _outcome(instance, 2 * k_cap, rec, (k_cap, k_cap), True)
