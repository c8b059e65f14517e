import math

import numpy as np
import pytest

from bestarm.bounds import (
    fb_error_lower_bounds,
    fb_modified_instance,
    fc_lower_bound_eps_relaxed,
    fc_lower_bound_general,
    fc_two_armed_bounds,
    gap_profile,
)
from bestarm.complexity import c_star_fc
from bestarm.dists import Bernoulli, Gaussian, bernoulli_kl
from bestarm.errors import DomainError
from bestarm.instances import BanditInstance, two_armed_bernoulli, two_armed_gaussian

EASY = two_armed_gaussian(0.5, 0.0, 0.25)


def gaussians(means, var=0.25, m=1):
    return BanditInstance(tuple(Gaussian(mu, var) for mu in means), m=m)


# --- gap profiles -----------------------------------------------------------

def test_gap_profile_easy():
    prof = gap_profile(EASY)
    assert prof.gaps == (0.5, 0.5)
    assert prof.h == pytest.approx(8.0, rel=1e-14)
    assert prof.h2 == pytest.approx(8.0, rel=1e-14)


def test_gap_profile_two_armed_scaling_identity():
    # H+ + H- = 2 sigma^2 * H, and H+ = H- for K=2, m=1
    prof = gap_profile(EASY)
    assert prof.h_plus == pytest.approx(prof.h_minus, rel=1e-14)
    assert prof.h_plus + prof.h_minus == pytest.approx(2 * 0.25 * prof.h, rel=1e-12)


def test_gap_profile_h_prime_hand_value():
    inst = gaussians((1.0, 0.9, 0.5))
    prof = gap_profile(inst, sigma2=0.25)
    assert prof.h_prime == pytest.approx(0.5 / 0.01 + 0.5 / 0.25, rel=1e-12)  # 52


def test_gap_profile_h2():
    inst = gaussians((1.0, 0.9, 0.5))
    assert gap_profile(inst).h2 == pytest.approx(max(2 / 0.01, 3 / 0.25), rel=1e-12)


def test_gap_profile_unsorted_input_and_m2():
    inst = gaussians((0.5, 1.0, 0.9, 0.1), m=2)  # best set is arms {1, 2}
    prof = gap_profile(inst)
    # gaps: best arms vs mu_[3]=0.5, others vs mu_[2]=0.9
    assert prof.gaps == pytest.approx((0.4, 0.5, 0.4, 0.8))
    assert prof.h_plus + prof.h_minus == pytest.approx(2 * 0.25 * prof.h, rel=1e-12)
    expected_tilde = (prof.h_plus + prof.h_minus) * min(prof.h_plus, prof.h_minus) / (
        prof.h_plus + prof.h_minus + min(prof.h_plus, prof.h_minus))
    assert prof.h_tilde == pytest.approx(expected_tilde, rel=1e-12)


def test_gap_profile_non_gaussian():
    inst = two_armed_bernoulli(0.2, 0.1)
    prof = gap_profile(inst)
    assert prof.h == pytest.approx(2 / 0.01, rel=1e-12)
    assert prof.h_prime is None and prof.h_tilde is None
    with pytest.raises(DomainError):
        gap_profile(inst, sigma2=0.25)
    with pytest.raises(DomainError):
        fb_error_lower_bounds(prof, 10)


def test_gap_profile_unequal_variances_need_sigma():
    inst = two_armed_gaussian(0.5, 0.0, 0.25, 0.5)
    with pytest.raises(DomainError):
        gap_profile(inst)
    prof = gap_profile(inst, sigma2=0.25)
    assert prof.h_prime == pytest.approx(2.0, rel=1e-12)


# --- fixed-confidence bounds --------------------------------------------------

def test_fc_general_easy_gaussian():
    assert fc_lower_bound_general(EASY, 0.05) == pytest.approx(
        4.0 * math.log(10.0), rel=1e-12)


def test_fc_general_rejects_large_delta():
    with pytest.raises(DomainError):
        fc_lower_bound_general(EASY, 0.5)
    with pytest.raises(DomainError):
        fc_lower_bound_general(EASY, 0.1500001)


def test_fc_general_three_armed_bernoulli():
    inst = BanditInstance((Bernoulli(0.5), Bernoulli(0.4), Bernoulli(0.3)))
    expected = (1 / bernoulli_kl(0.5, 0.4) + 1 / bernoulli_kl(0.4, 0.5)
                + 1 / bernoulli_kl(0.3, 0.5)) * math.log(5.0)
    assert fc_lower_bound_general(inst, 0.1) == pytest.approx(float(expected), rel=1e-12)


def test_fc_eps_relaxed_single_near_arm():
    inst = two_armed_bernoulli(0.5, 0.3)
    expected = (1 / bernoulli_kl(0.3, 0.6)) * math.log(5.0)
    assert fc_lower_bound_eps_relaxed(inst, 0.1, 0.1) == pytest.approx(
        float(expected), rel=1e-12)


def test_fc_eps_relaxed_count_term():
    inst = BanditInstance((Bernoulli(0.5), Bernoulli(0.45), Bernoulli(0.2)))
    near = 2  # arms with mean >= 0.4
    expected = ((near - 1) / bernoulli_kl(0.5, 0.4)
                + 1 / bernoulli_kl(0.2, 0.6)) * math.log(5.0)
    assert fc_lower_bound_eps_relaxed(inst, 0.1, 0.1) == pytest.approx(
        float(expected), rel=1e-12)


def test_fc_eps_relaxed_domain():
    inst = two_armed_bernoulli(0.95, 0.3)
    with pytest.raises(DomainError):
        fc_lower_bound_eps_relaxed(inst, 0.1, 0.1)  # mu+eps >= 1
    with pytest.raises(DomainError):
        fc_lower_bound_eps_relaxed(EASY, 0.1, 0.1)  # not Bernoulli
    with pytest.raises(DomainError):
        fc_lower_bound_eps_relaxed(two_armed_bernoulli(0.5, 0.3), -0.1, 0.1)


def test_fc_two_armed_easy():
    general, uniform = fc_two_armed_bounds(EASY, 0.05)
    assert general == pytest.approx(8.0 * math.log(10.0), rel=1e-12)
    assert uniform == pytest.approx(general, rel=1e-12)


def test_fc_two_armed_bernoulli_oracle():
    general, uniform = fc_two_armed_bounds(two_armed_bernoulli(0.2, 0.1), 0.1)
    assert general == pytest.approx(math.log(5.0) / 0.009988333284034548, rel=1e-8)
    assert general == pytest.approx(161.2, abs=0.5)
    assert uniform >= general


def test_two_armed_general_vs_reversed_chernoff():
    # single-arm-move bound log(1/2d)(1/K12 + 1/K21) <= log(1/2d)/c_*
    rng = np.random.default_rng(1)
    for _ in range(15):
        x, y = rng.uniform(0.05, 0.95, size=2)
        if abs(x - y) < 0.02:
            continue
        inst = two_armed_bernoulli(x, y)
        delta = 0.05
        single_move = fc_lower_bound_general(inst, delta)
        both_move = math.log(1 / (2 * delta)) / c_star_fc(inst)[0]
        assert single_move <= both_move * (1 + 1e-10)
        expected = math.log(1 / (2 * delta)) * (
            1 / float(bernoulli_kl(x, y)) + 1 / float(bernoulli_kl(y, x)))
        assert single_move == pytest.approx(expected, rel=1e-12)


def test_fc_bounds_decrease_in_delta():
    values = [fc_lower_bound_general(EASY, d) for d in (0.15, 0.1, 0.05, 0.01)]
    assert all(a < b for a, b in zip(values, values[1:]))


# --- modified instances ---------------------------------------------------------

def test_modified_single_arm_example():
    inst = gaussians((1.0, 0.5))
    mod = fb_modified_instance(inst, 2)
    assert mod.means == pytest.approx((1.0, 1.5))
    assert mod.best_set != inst.best_set


def test_modified_single_arm_properties():
    rng = np.random.default_rng(7)
    for _ in range(25):
        means = tuple(sorted(rng.normal(size=4), reverse=True))
        if min(abs(np.diff(means))) < 1e-3:
            continue
        inst = gaussians(means)
        for a in range(2, 5):
            mod = fb_modified_instance(inst, a)
            assert mod.best_set != inst.best_set
            assert gap_profile(mod).h_prime <= gap_profile(inst).h_prime + 1e-12


def test_modified_pair_properties():
    # the H decrease is an existence claim: some (a, b) pair achieves it
    # (arbitrary pairs violate it on ~30% of random instances); the adjacent
    # swap a=m, b=m+1 works on every tested draw
    rng = np.random.default_rng(13)
    count = 0
    while count < 25:
        means = tuple(sorted(rng.normal(size=5), reverse=True))
        if min(abs(np.diff(means))) < 1e-2:
            continue
        m = int(rng.integers(1, 4))
        inst = gaussians(means, m=m)
        pi = gap_profile(inst)
        h_before = pi.h_plus + pi.h_minus
        decreasing = []
        for a in range(1, m + 1):
            for b in range(m + 1, 6):
                mod = fb_modified_instance(inst, a, b)
                assert mod.best_set != inst.best_set
                pm = gap_profile(mod)
                if pm.h_plus + pm.h_minus < h_before:
                    decreasing.append((a, b))
        assert decreasing, f"no H-decreasing pair for means={means}, m={m}"
        assert (m, m + 1) in decreasing
        count += 1


def test_modified_instance_index_validation():
    inst = gaussians((1.0, 0.5, 0.2))
    with pytest.raises(DomainError):
        fb_modified_instance(inst, 1)  # nu^[a] needs a >= 2
    with pytest.raises(DomainError):
        fb_modified_instance(inst, 4)
    with pytest.raises(DomainError):
        fb_modified_instance(inst, 2, 3)  # a must be in the best set
    with pytest.raises(DomainError):
        fb_modified_instance(two_armed_bernoulli(0.2, 0.1), 2)


# --- fixed-budget error bounds ---------------------------------------------------

def test_fb_error_bounds_zero_budget():
    prof = gap_profile(EASY)
    assert fb_error_lower_bounds(prof, 0) == (1.0, 0.25)


def test_fb_error_bounds_easy_hand_value():
    prof = gap_profile(EASY)
    assert prof.h_prime == pytest.approx(2.0, rel=1e-14)  # 2 sigma^2 / gap^2
    bound_m1, bound_general = fb_error_lower_bounds(prof, 100)
    assert bound_m1 == pytest.approx(math.exp(-400.0 / 2.0), rel=1e-12)
    assert bound_general == pytest.approx(0.25 * math.exp(-400.0 / prof.h_tilde), rel=1e-12)


def test_fb_error_bounds_decreasing_in_t():
    prof = gap_profile(EASY)
    values = [fb_error_lower_bounds(prof, t) for t in (0, 5, 20, 50)]
    for (a1, a2), (b1, b2) in zip(values, values[1:]):
        assert b1 < a1 and b2 < a2
        assert 0 < b1 < 1 and 0 < b2 <= 0.25
