import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from klucb_transfer.core import (
    STREAM_PRIOR_SAMPLES,
    STREAM_REWARDS,
    ArmStats,
    BanditInstance,
    PriorArm,
    PriorSpec,
    SeedContract,
    draw_prior_data,
    update_stats,
)


class TestBanditInstance:
    def test_optimal_mean(self):
        inst = BanditInstance((1.0, 0.9, 0.8, 0.7, 0.6, 0.5), 1.0)
        assert inst.optimal_mean() == 1.0
        assert inst.optimal_arm() == 0
        assert inst.n_arms == 6

    def test_ties_permitted(self):
        inst = BanditInstance((0.5, 0.5), 1.0)
        assert inst.optimal_arm() == 0

    def test_rejects_bad_sigma(self):
        with pytest.raises(ValueError):
            BanditInstance((0.5,), 0.0)
        with pytest.raises(ValueError):
            BanditInstance((0.5,), math.nan)

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            BanditInstance((), 1.0)


class TestPriorSpec:
    def test_arm_count_check(self):
        inst = BanditInstance((1.0, 0.5), 1.0)
        spec = PriorSpec((PriorArm(10, 0.5, 0.1),), 1.0)
        with pytest.raises(ValueError):
            spec.check_matches(inst)

    def test_rejects_negative_fields(self):
        with pytest.raises(ValueError):
            PriorArm(-1)
        with pytest.raises(ValueError):
            PriorArm(1, 0.0, -0.1)

    def test_validity_warning(self):
        inst = BanditInstance((1.0,), 1.0)
        spec = PriorSpec((PriorArm(10, 0.5, 0.1),), 1.0)
        with pytest.warns(UserWarning):
            spec.warn_if_invalid(inst)


class TestUpdateStats:
    def test_first_observation(self):
        assert update_stats(ArmStats(), 3.0) == ArmStats(1, 3.0)

    def test_two_point_mean(self):
        assert update_stats(ArmStats(1, 3.0), 1.0) == ArmStats(2, 2.0)

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            update_stats(ArmStats(), math.inf)

    def test_summation_stability_1e6(self):
        stats = ArmStats()
        for _ in range(10**6):
            stats = update_stats(stats, 1.0)
        assert stats.pulls == 10**6
        assert abs(stats.mean - 1.0) <= 1e-12

    @given(
        st.lists(
            st.floats(-1e3, 1e3, allow_nan=False),
            min_size=1,
            max_size=1000,
        )
    )
    @settings(max_examples=50)
    def test_mean_matches_brute_force(self, rewards):
        stats = ArmStats()
        for r in rewards:
            stats = update_stats(stats, r)
        expected = sum(rewards) / len(rewards)
        scale = max(1.0, abs(expected))
        assert abs(stats.mean - expected) <= 1e-12 * scale


class TestSeedContract:
    def test_replay_determinism(self):
        a = SeedContract(12345, 7, STREAM_REWARDS).generator().random(100)
        b = SeedContract(12345, 7, STREAM_REWARDS).generator().random(100)
        assert np.array_equal(a, b)

    def test_distinct_triples_distinct_streams(self):
        base = SeedContract(12345, 7, STREAM_REWARDS).generator().random(100)
        for other in (
            SeedContract(12346, 7, STREAM_REWARDS),
            SeedContract(12345, 8, STREAM_REWARDS),
            SeedContract(12345, 7, STREAM_PRIOR_SAMPLES),
        ):
            assert not np.array_equal(base, other.generator().random(100))

    def test_rejects_bad_fields(self):
        with pytest.raises(ValueError):
            SeedContract(-1, 0, STREAM_REWARDS)
        with pytest.raises(ValueError):
            SeedContract(0, -1, STREAM_REWARDS)
        with pytest.raises(ValueError):
            SeedContract(0, 0, "nope")


class TestDrawPriorData:
    def test_no_prior_sentinels(self):
        spec = PriorSpec.no_prior(3)
        data = draw_prior_data(
            spec, SeedContract(1, 0, STREAM_PRIOR_SAMPLES)
        )
        assert data.n_prior == (0, 0, 0)
        assert data.mu_hat_prior == (0.0, 0.0, 0.0)

    def test_degenerate_noise_limit(self):
        spec = PriorSpec((PriorArm(5, 0.7, 0.0),), sigma_prior=1e-12)
        data = draw_prior_data(
            spec, SeedContract(3, 0, STREAM_PRIOR_SAMPLES)
        )
        assert abs(data.mu_hat_prior[0] - 0.7) <= 1e-11

    def test_replay_bit_identical(self):
        spec = PriorSpec((PriorArm(1000, 0.55, 0.1),), sigma_prior=1.0)
        seed = SeedContract(42, 3, STREAM_PRIOR_SAMPLES)
        a = draw_prior_data(spec, seed)
        b = draw_prior_data(spec, seed)
        assert a == b

    def test_requires_prior_stream(self):
        spec = PriorSpec.no_prior(1)
        with pytest.raises(ValueError):
            draw_prior_data(spec, SeedContract(1, 0, STREAM_REWARDS))

    def test_prior_mean_concentrates(self):
        # Mean of mu_hat' over 1000 seeds with n_prior=1e4 stays within
        # 4 sigma' / sqrt(1000 * 1e4) of mu'.
        n_seeds, n_prior, mu = 1000, 10**4, 0.55
        spec = PriorSpec((PriorArm(n_prior, mu, 0.0),), sigma_prior=1.0)
        hats = [
            draw_prior_data(
                spec, SeedContract(777, r, STREAM_PRIOR_SAMPLES)
            ).mu_hat_prior[0]
            for r in range(n_seeds)
        ]
        tol = 4.0 / math.sqrt(n_seeds * n_prior)
        assert abs(np.mean(hats) - mu) <= tol
