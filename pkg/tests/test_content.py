"""Tests for the content popularity and cache tier model."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cachesec import (
    ContentParams,
    ParameterError,
    PopularityProfile,
    TierDensities,
    hit_probability,
    request_mix,
    tier_densities,
    zipf_popularity,
)

# Values frozen from a high-precision reference evaluation of the Zipf
# normalisation at the default catalogue (100 files, skew 0.8, cache 5).
P1_DEFAULT = 0.12293414655658282
DELTA_DEFAULT = 0.31906521822158171
R1_DEFAULT = 0.40509292160519971
R2_DEFAULT = 0.18981415678960056


class TestZipfPopularity:
    def test_default_top_probability(self):
        profile = zipf_popularity(ContentParams())
        assert profile.probabilities[0] == pytest.approx(P1_DEFAULT, rel=1e-12)

    def test_probabilities_sum_to_one(self):
        profile = zipf_popularity(ContentParams(file_count=100, zipf_skew=0.8))
        assert profile.probabilities.sum() == pytest.approx(1.0, abs=1e-12)

    def test_single_file_catalogue(self):
        profile = zipf_popularity(ContentParams(file_count=1, cache_size=1))
        assert profile.probabilities.shape == (1,)
        assert profile.probabilities[0] == pytest.approx(1.0)

    def test_zero_skew_is_uniform(self):
        profile = zipf_popularity(ContentParams(file_count=40, zipf_skew=0.0, cache_size=4))
        assert np.allclose(profile.probabilities, 1.0 / 40.0, atol=1e-15)

    def test_probabilities_nonincreasing(self):
        profile = zipf_popularity(ContentParams(file_count=60, zipf_skew=1.3, cache_size=5))
        assert np.all(np.diff(profile.probabilities) <= 0.0)

    @given(
        n=st.integers(min_value=1, max_value=500),
        skew=st.floats(min_value=0.0, max_value=3.0, allow_nan=False),
    )
    def test_profile_is_valid_distribution(self, n, skew):
        profile = zipf_popularity(ContentParams(file_count=n, cache_size=min(1, n), zipf_skew=skew))
        p = profile.probabilities
        assert p.shape == (n,)
        assert np.all(p > 0.0)
        assert np.all(np.diff(p) <= 1e-18)
        assert math.isclose(float(p.sum()), 1.0, abs_tol=1e-9)


class TestHitProbability:
    def test_default_hit_probability(self):
        profile = zipf_popularity(ContentParams())
        assert hit_probability(profile, 5) == pytest.approx(DELTA_DEFAULT, rel=1e-12)

    def test_empty_cache(self):
        profile = zipf_popularity(ContentParams())
        assert hit_probability(profile, 0) == 0.0

    def test_full_cache(self):
        profile = zipf_popularity(ContentParams(file_count=30, cache_size=5))
        assert hit_probability(profile, 30) == pytest.approx(1.0, abs=1e-12)

    def test_uniform_catalogue_hits_linearly(self):
        profile = zipf_popularity(ContentParams(file_count=100, zipf_skew=0.0))
        assert hit_probability(profile, 25) == pytest.approx(0.25, abs=1e-12)

    def test_cache_larger_than_catalogue_rejected(self):
        profile = zipf_popularity(ContentParams(file_count=10, cache_size=2))
        with pytest.raises(ParameterError):
            hit_probability(profile, 11)

    @given(
        n=st.integers(min_value=2, max_value=200),
        skew=st.floats(min_value=0.0, max_value=2.5, allow_nan=False),
        data=st.data(),
    )
    def test_monotone_in_cache_size(self, n, skew, data):
        profile = zipf_popularity(ContentParams(file_count=n, cache_size=1, zipf_skew=skew))
        m_small = data.draw(st.integers(min_value=0, max_value=n - 1))
        m_large = data.draw(st.integers(min_value=m_small + 1, max_value=n))
        assert hit_probability(profile, m_large) >= hit_probability(profile, m_small)
        assert 0.0 <= hit_probability(profile, m_small) <= 1.0


class TestPopularityProfileValidation:
    def test_rejects_unnormalised(self):
        with pytest.raises(ParameterError):
            PopularityProfile(probabilities=np.array([0.5, 0.4]))

    def test_rejects_increasing_tail(self):
        with pytest.raises(ParameterError):
            PopularityProfile(probabilities=np.array([0.3, 0.2, 0.5]))

    def test_rejects_nonpositive_entries(self):
        with pytest.raises(ParameterError):
            PopularityProfile(probabilities=np.array([1.2, -0.2]))


class TestRequestMix:
    def test_components_sum_to_one(self):
        mix = request_mix(0.5, DELTA_DEFAULT)
        total = (
            mix.self_offload + mix.secure_tx + mix.normal_tx_cached + mix.normal_tx_uncached
        )
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_default_split(self):
        mix = request_mix(0.5, DELTA_DEFAULT)
        assert mix.self_offload == pytest.approx(0.5 * DELTA_DEFAULT, rel=1e-12)
        assert mix.secure_tx == pytest.approx(0.5 * (1.0 - DELTA_DEFAULT), rel=1e-12)
        assert mix.normal_tx_cached == pytest.approx(0.5 * DELTA_DEFAULT, rel=1e-12)
        assert mix.normal_tx_uncached == pytest.approx(0.5 * (1.0 - DELTA_DEFAULT), rel=1e-12)

    def test_no_caching_users(self):
        mix = request_mix(0.0, 0.4)
        assert mix.self_offload == 0.0
        assert mix.secure_tx == 0.0
        assert mix.normal_tx_cached == pytest.approx(0.4)
        assert mix.normal_tx_uncached == pytest.approx(0.6)

    def test_alpha_out_of_range_rejected(self):
        with pytest.raises(ParameterError):
            request_mix(1.5, 0.3)

    @given(
        alpha=st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
        delta=st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
    )
    def test_mix_is_a_distribution(self, alpha, delta):
        mix = request_mix(alpha, delta)
        parts = (mix.self_offload, mix.secure_tx, mix.normal_tx_cached, mix.normal_tx_uncached)
        assert all(part >= 0.0 for part in parts)
        assert math.isclose(sum(parts), 1.0, abs_tol=1e-12)


class TestTierDensities:
    def test_default_fractions(self):
        tiers = tier_densities(1.0, 0.5, DELTA_DEFAULT)
        assert tiers.lambda_b1 == pytest.approx(R1_DEFAULT, rel=1e-12)
        assert tiers.lambda_b2 == pytest.approx(R2_DEFAULT, rel=1e-12)
        assert tiers.lambda_b3 == pytest.approx(R1_DEFAULT, rel=1e-12)

    def test_tiers_sum_to_total_density(self):
        tiers = tier_densities(3.5, 0.7, 0.2)
        assert tiers.lambda_b == pytest.approx(3.5, rel=1e-12)

    def test_all_requests_served_locally(self):
        # alpha*delta = 1 leaves nothing for any BS to transmit.
        with pytest.raises(ParameterError):
            tier_densities(1.0, 1.0, 1.0)

    def test_no_caching_users_means_no_secure_tier(self):
        tiers = tier_densities(2.0, 0.0, 0.5)
        assert tiers.lambda_b1 == 0.0
        assert tiers.lambda_b2 == pytest.approx(1.0)
        assert tiers.lambda_b3 == pytest.approx(1.0)

    def test_negative_density_rejected(self):
        with pytest.raises(ParameterError):
            tier_densities(-1.0, 0.5, 0.3)

    def test_tier_dataclass_rejects_negative(self):
        with pytest.raises(ParameterError):
            TierDensities(lambda_b1=-0.1, lambda_b2=0.5, lambda_b3=0.6)

    def test_fractions_of_all_zero_tiers_rejected(self):
        tiers = TierDensities(lambda_b1=0.0, lambda_b2=0.0, lambda_b3=0.0)
        with pytest.raises(ParameterError):
            tiers.fractions()

    @given(
        lam=st.floats(min_value=1e-3, max_value=50.0, allow_nan=False),
        alpha=st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
        delta=st.floats(min_value=0.0, max_value=0.999, allow_nan=False),
    )
    def test_density_split_is_consistent(self, lam, alpha, delta):
        tiers = tier_densities(lam, alpha, delta)
        assert tiers.lambda_b1 >= 0.0
        assert tiers.lambda_b2 >= 0.0
        assert tiers.lambda_b3 >= 0.0
        assert math.isclose(tiers.lambda_b, lam, rel_tol=1e-9)
        f1, f2, f3 = tiers.fractions()
        assert math.isclose(f1 + f2 + f3, 1.0, abs_tol=1e-12)
