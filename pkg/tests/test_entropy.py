# =======================================================================================
# tests/test_entropy.py - Feature Entropy and Ranking
# =======================================================================================
import math

import numpy as np
import pytest

from szclassify.models import BinningConfig, FeatureMatrix
from szclassify.services.entropy import column_entropy, entropy, rank_features
from szclassify.utils.exceptions import InvalidDistribution


class TestEntropy:
    def test_fair_coin(self):
        assert entropy([0.5, 0.5]) == pytest.approx(1.0)

    def test_certain_outcome(self):
        assert entropy([1.0]) == 0.0

    def test_cohort_class_balance(self):
        assert entropy([49 / 81, 32 / 81]) == pytest.approx(0.96749, abs=1e-4)

    def test_zero_probability_contributes_nothing(self):
        assert entropy([0.5, 0.5, 0.0]) == pytest.approx(1.0)

    def test_order_of_outcomes_does_not_matter(self):
        rng = np.random.default_rng(12)
        for _ in range(50):
            p = rng.dirichlet(np.ones(7))
            assert entropy(rng.permutation(p)) == pytest.approx(entropy(p), abs=1e-12)

    def test_binary_entropy_is_concave_with_peak_at_half(self):
        grid = np.linspace(0.0, 1.0, 101)
        h = np.array([entropy([p, 1.0 - p]) for p in grid])
        assert int(np.argmax(h)) == 50
        assert h[50] == pytest.approx(1.0)
        assert np.all(h <= h[50] + 1e-12)
        assert np.all(np.diff(h, 2) <= 1e-12)

    @pytest.mark.parametrize("probabilities", [[], [0.5, 0.6], [1.2, -0.2]])
    def test_rejects_non_distributions(self, probabilities):
        with pytest.raises(InvalidDistribution):
            entropy(probabilities)


def _single(values, name="x"):
    return FeatureMatrix.from_arrays(np.asarray(values, dtype=float), [i % 2 for i in range(len(values))], names=[name])


class TestColumnEntropy:
    def test_constant(self):
        assert column_entropy(_single([3.0] * 8), "x", BinningConfig()).entropy_bits == 0.0

    def test_uniform_over_ten_bins(self):
        score = column_entropy(_single(np.arange(10.0)), "x", BinningConfig(bin_count=10))
        assert score.entropy_bits == pytest.approx(math.log2(10), abs=1e-6)

    def test_balanced_two_bins(self):
        score = column_entropy(_single([0.0, 0.0, 1.0, 1.0]), "x", BinningConfig(bin_count=2))
        assert score.entropy_bits == pytest.approx(1.0)

    @pytest.mark.parametrize("scale", [0.25, 3.0, 1000.0])
    def test_positive_scaling_keeps_entropy(self, scale):
        values = np.random.default_rng(6).normal(2.0, 1.5, 300)
        cfg = BinningConfig(bin_count=10)
        plain = column_entropy(_single(values), "x", cfg)
        scaled = column_entropy(_single(values * scale), "x", cfg)
        assert scaled.entropy_bits == plain.entropy_bits


class TestRanking:
    def test_uniform_before_constant(self):
        m = FeatureMatrix.from_arrays(
            np.column_stack([np.full(10, 2.0), np.arange(10.0)]), [i % 2 for i in range(10)], names=["flat", "spread"]
        )
        assert rank_features(m, BinningConfig()).names == ["spread", "flat"]

    def test_ties_keep_schema_order(self):
        m = FeatureMatrix.from_arrays(np.ones((6, 4)), [0, 1] * 3, names=["d", "a", "c", "b"])
        assert rank_features(m, BinningConfig()).names == ["d", "a", "c", "b"]

    def test_matches_recomputed_entropies(self):
        rng = np.random.default_rng(5)
        columns = [
            rng.normal(0, 1, 200),
            rng.exponential(1.0, 200),
            rng.integers(0, 3, 200).astype(float),
            rng.uniform(0, 1, 200),
        ]
        m = FeatureMatrix.from_arrays(np.column_stack(columns), rng.integers(0, 2, 200))
        cfg = BinningConfig(bin_count=10)

        def oracle(values):
            lo, hi = values.min(), values.max()
            idx = np.minimum(((values - lo) / (hi - lo) * 10).astype(int), 9)
            p = np.bincount(idx, minlength=10) / len(values)
            p = p[p > 0]
            return float(-(p * np.log2(p)).sum())

        expected = sorted(m.names, key=lambda n: -oracle(m.column(n)))
        ranking = rank_features(m, cfg)
        assert ranking.names == expected
        for score in ranking.scores:
            assert score.entropy_bits == pytest.approx(oracle(m.column(score.column)), abs=1e-12)
