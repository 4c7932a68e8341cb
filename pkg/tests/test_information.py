"""Exact joint construction and the information measures computed from it."""

import math

import numpy as np
import pytest

from genbounds import (
    InformationKind,
    JointDistribution,
    build_joint,
    chi_square_information,
    constant_kernel,
    deterministic_kernel,
    entropy,
    first_sample_kernel,
    indexing_kernel,
    make_discrete,
    max_density_ratio,
    mean_kernel,
    mutual_information,
    noisy_mean_kernel,
    plugin_joint_mc,
    power_information,
)
from genbounds.distributions import EnumerationCapError


@pytest.fixture
def fair_bit_joint(fair_bit):
    # W = Z_1 on a fair bit: diagonal 2x2 joint
    return build_joint(fair_bit, 1, first_sample_kernel())


def test_fair_bit_identity_oracle(fair_bit_joint):
    assert mutual_information(fair_bit_joint).value == pytest.approx(math.log(2.0), abs=1e-12)
    assert chi_square_information(fair_bit_joint).value == pytest.approx(1.0, abs=1e-12)
    assert power_information(fair_bit_joint, 2.0).value == pytest.approx(1.0, abs=1e-12)
    assert max_density_ratio(fair_bit_joint) == pytest.approx(2.0, abs=1e-12)


def test_constant_kernel_is_independent(fair_bit):
    # round-off never pushes an information value below zero
    j = build_joint(fair_bit, 2, constant_kernel(0.3))
    assert 0.0 <= mutual_information(j).value <= 1e-12
    assert 0.0 <= chi_square_information(j).value <= 1e-12
    assert 0.0 <= power_information(j, 3.0).value <= 1e-12
    assert max_density_ratio(j) == pytest.approx(1.0, abs=1e-12)


def test_mean_kernel_marginal(fair_bit):
    j = build_joint(fair_bit, 2, mean_kernel())
    assert j.w_atoms == (0.0, 0.5, 1.0)
    assert np.allclose(j.w_probs, [0.25, 0.5, 0.25], atol=1e-12)
    assert j.mass.sum() == pytest.approx(1.0, abs=1e-9)
    assert np.allclose(j.mass.sum(axis=1), j.w_probs, atol=1e-12)
    assert np.allclose(j.mass.sum(axis=0), j.s_probs, atol=1e-12)


def test_multiset_grouping_matches_ordered_enumeration():
    # same estimator with and without the permutation-invariance flag; the
    # multiset fast path must not change any information value
    d = make_discrete([-1.0, 0.2, 1.0], [0.5, 0.2, 0.3])
    plain_mean = deterministic_kernel(
        fn=lambda s: float(np.mean(s)), permutation_invariant=False, name="mean-ordered"
    )
    j_fast = build_joint(d, 3, mean_kernel())
    j_slow = build_joint(d, 3, plain_mean)
    assert mutual_information(j_fast).value == pytest.approx(
        mutual_information(j_slow).value, abs=1e-12
    )
    assert chi_square_information(j_fast).value == pytest.approx(
        chi_square_information(j_slow).value, abs=1e-12
    )
    assert power_information(j_fast, 3.0).value == pytest.approx(
        power_information(j_slow, 3.0).value, abs=1e-12
    )
    assert max_density_ratio(j_fast) == pytest.approx(max_density_ratio(j_slow), rel=1e-12)


def test_injective_kernel_oracles():
    d = make_discrete([-0.5, 0.0, 0.5], [0.2, 0.3, 0.5])
    j = build_joint(d, 2, indexing_kernel(d))
    # injective map: MI = H(S), chi2 = |W| - 1, power = sum p^(2-t) - 1
    s_entropy = entropy(j.s_probs)
    assert mutual_information(j).value == pytest.approx(s_entropy, abs=1e-9)
    assert chi_square_information(j).value == pytest.approx(j.w_count - 1.0, abs=1e-9)
    expected_p3 = math.fsum(p ** (2.0 - 3.0) for p in j.s_probs) - 1.0
    assert power_information(j, 3.0).value == pytest.approx(expected_p3, rel=1e-12)


def test_randomized_kernel_joint(fair_bit):
    j = build_joint(fair_bit, 2, noisy_mean_kernel([-0.25, 0.25], [0.5, 0.5]))
    assert j.mass.sum() == pytest.approx(1.0, abs=1e-9)
    mi = mutual_information(j).value
    assert mi >= -1e-12
    assert mi <= min(entropy(j.w_probs), entropy(j.s_probs)) + 1e-12


def test_power_information_rejects_low_order(fair_bit_joint):
    with pytest.raises(ValueError):
        power_information(fair_bit_joint, 1.0)


def test_ratio_dominates_power_information():
    d = make_discrete([-1.0, 0.0, 1.0], [0.2, 0.5, 0.3])
    for kernel in (mean_kernel(), first_sample_kernel(), noisy_mean_kernel([-0.1, 0.1], [0.4, 0.6])):
        j = build_joint(d, 2, kernel)
        r = max_density_ratio(j)
        for t in (2.0, 3.0):
            assert power_information(j, t).value <= r**t - 1.0 + 1e-9
        assert chi_square_information(j).value <= r * r - 1.0 + 1e-9


def test_w_rounding_merges_float_noise(fair_bit):
    # conditionals landing within the rounding resolution collapse to one atom,
    # so W carries no information
    noisy = deterministic_kernel(
        fn=lambda s: 0.1 + 0.2 if s[0] == 0.0 else 0.3, name="noise-split"
    )
    j = build_joint(fair_bit, 1, noisy)
    assert j.w_count == 1
    assert abs(mutual_information(j).value) <= 1e-12


def test_coarse_grouping_never_gains_information():
    d = make_discrete([-1.0, 1.0 / 3.0, 0.7], [0.3, 0.4, 0.3])
    fine = build_joint(d, 3, mean_kernel(), w_round_digits=10)
    coarse = build_joint(d, 3, mean_kernel(), w_round_digits=2)
    assert mutual_information(coarse).value <= mutual_information(fine).value + 1e-12


def test_kernel_output_validation(fair_bit):
    from genbounds import LearningKernel

    bad = LearningKernel(conditional=lambda s: 0.5, name="broken")
    with pytest.raises(ValueError, match="kernel output invalid"):
        build_joint(fair_bit, 1, bad)


def test_enumeration_cap(fair_bit):
    with pytest.raises(EnumerationCapError):
        build_joint(fair_bit, 40, mean_kernel())


class TestJointDistribution:
    def test_from_mass_drops_zero_rows_and_columns(self):
        mass = np.array([[0.5, 0.0], [0.0, 0.0], [0.0, 0.5]])
        j = JointDistribution.from_mass([0.0, 1.0, 2.0], mass)
        assert j.w_atoms == (0.0, 2.0)
        assert j.w_count == 2
        assert j.s_count == 2

    def test_from_mass_rejects_negative(self):
        with pytest.raises(ValueError):
            JointDistribution.from_mass([0.0, 1.0], np.array([[0.6, 0.5], [-0.1, 0.0]]))

    def test_from_mass_rejects_bad_total(self):
        with pytest.raises(ValueError):
            JointDistribution.from_mass([0.0, 1.0], np.array([[0.3, 0.3], [0.3, 0.3]]))

    def test_dict_round_trip(self, fair_bit):
        j = build_joint(fair_bit, 2, mean_kernel())
        back = JointDistribution.from_dict(j.to_dict())
        assert back.w_atoms == j.w_atoms
        assert np.allclose(back.mass, j.mass, atol=0)


def test_entropy_values():
    assert entropy(np.array([0.25, 0.25, 0.25, 0.25])) == pytest.approx(math.log(4.0), abs=1e-12)
    assert entropy(np.array([1.0])) == 0.0
    assert entropy(np.array([0.5, 0.5, 0.0])) == pytest.approx(math.log(2.0), abs=1e-12)


def test_plugin_estimator_tracks_exact_joint(fair_bit):
    # approximate cross-check path: generous tolerances by design
    exact = build_joint(fair_bit, 1, first_sample_kernel())
    est = plugin_joint_mc(fair_bit, 1, first_sample_kernel(), draws=40_000, seed=5)
    assert mutual_information(est).value == pytest.approx(
        mutual_information(exact).value, abs=0.05
    )
    assert chi_square_information(est).value == pytest.approx(
        chi_square_information(exact).value, abs=0.1
    )
