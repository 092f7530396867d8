"""
Tests for the two-component Gaussian mixture.

Tests cover:
- EM recovery on closed-form cluster fixtures and sampling oracles
- Log-likelihood monotonicity and the variance floor
- Component labeling, classification and posterior symmetry
- Per-feature expectation values and their degenerate cases
"""

import numpy as np
import pytest

from chromasync.config.configs import GmmConfig
from chromasync.core.constants import LABEL_FAKE, LABEL_REAL
from chromasync.core.exceptions import (
    DegenerateFitError,
    DimensionMismatchError,
    EmptyInputError,
    NonFiniteInputError,
)
from chromasync.core.types import FeatureVector
from chromasync.models.gmm import GmmModel, classify, em_fit, feature_expectations


def _assert_monotone(model: GmmModel) -> None:
    history = np.asarray(model.log_likelihood_history)
    assert history.size >= 2
    assert np.all(np.diff(history) >= -1e-10)


TWO_CLUSTERS = np.array([-0.1, 0.0, 0.1, 4.9, 5.0, 5.1])


# ============================================================================
# EM fitting
# ============================================================================


class TestEmFit:
    def test_two_cluster_fixture(self):
        model = em_fit(TWO_CLUSTERS)
        assert model.dim == 1
        means = np.sort(model.means[:, 0])
        assert means[0] == pytest.approx(0.0, abs=0.2)
        assert means[1] == pytest.approx(5.0, abs=0.2)
        np.testing.assert_allclose(model.weights, [0.5, 0.5], atol=0.1)
        _assert_monotone(model)

    def test_single_gaussian_sample(self):
        rng = np.random.default_rng(42)
        sample = rng.normal(loc=3.0, scale=2.0, size=250)
        data = np.concatenate([sample, sample])
        model = em_fit(data)
        _assert_monotone(model)
        # the M-step keeps the weighted mean equal to the sample mean
        mixture_mean = float(model.weights @ model.means[:, 0])
        assert mixture_mean == pytest.approx(float(data.mean()), abs=1e-9)
        assert abs(mixture_mean - 3.0) <= 3 * 2.0 / np.sqrt(sample.size)
        # an overfitted mixture splits a single Gaussian; components stay within half a sigma
        for mean in model.means[:, 0]:
            assert abs(mean - 3.0) <= 0.5 * 2.0

    def test_parameter_invariants(self, rng):
        data = np.vstack([rng.normal(0, 1, size=(50, 6)), rng.normal(4, 0.5, size=(50, 6))])
        model = em_fit(data)
        assert np.all((model.weights > 0) & (model.weights < 1))
        assert model.weights.sum() == pytest.approx(1.0, abs=1e-12)
        assert np.all(model.variances >= 1e-9)
        _assert_monotone(model)

    def test_real_component_has_smaller_mean_feature(self, rng):
        data = np.vstack([rng.normal(10, 1, size=(30, 6)), rng.normal(0, 1, size=(30, 6))])
        model = em_fit(data)
        real = model.real_component
        assert model.means[real, 0] < model.means[1 - real, 0]

    def test_row_permutation_invariance(self, rng):
        data = np.vstack([rng.normal(0, 1, size=(40, 6)), rng.normal(5, 1, size=(40, 6))])
        shuffled = data[rng.permutation(len(data))]
        a, b = em_fit(data), em_fit(shuffled)
        real_a, real_b = a.real_component, b.real_component
        np.testing.assert_allclose(a.means[real_a], b.means[real_b], rtol=1e-6, atol=1e-8)
        np.testing.assert_allclose(a.variances[real_a], b.variances[real_b], rtol=1e-6, atol=1e-8)

    def test_variance_floor_on_duplicates(self):
        data = np.array([0.0, 0.0, 0.0, 1.0, 1.0, 1.0])
        model = em_fit(data)
        assert np.all(model.variances >= 1e-9)
        np.testing.assert_allclose(np.sort(model.means[:, 0]), [0.0, 1.0], atol=1e-6)

    def test_restarts_never_lower_likelihood(self, rng):
        data = np.concatenate([rng.normal(0, 1, 60), rng.normal(3, 1, 60)])
        plain = em_fit(data)
        restarted = em_fit(data, GmmConfig(n_restarts=3, seed=7))
        assert restarted.log_likelihood_history[-1] >= plain.log_likelihood_history[-1] - 1e-12

    def test_deterministic(self, rng):
        data = rng.normal(size=(40, 6))
        a, b = em_fit(data, GmmConfig(n_restarts=2, seed=3)), em_fit(data, GmmConfig(n_restarts=2, seed=3))
        np.testing.assert_array_equal(a.means, b.means)
        np.testing.assert_array_equal(a.variances, b.variances)

    def test_max_iters_cap_logs_warning(self, rng, chromasync_log):
        data = np.concatenate([rng.normal(0, 1, 50), rng.normal(1, 1, 50)])
        model = em_fit(data, GmmConfig(max_iters=1))
        assert model.n_iter == 1
        assert not model.converged
        assert "max_iters=1" in chromasync_log.text

    def test_too_few_rows(self):
        with pytest.raises(EmptyInputError, match="at least 4"):
            em_fit([1.0, 2.0, 3.0])

    def test_non_finite(self):
        with pytest.raises(NonFiniteInputError):
            em_fit([0.0, 1.0, np.nan, 2.0, 3.0])

    def test_identical_rows(self):
        with pytest.raises(DegenerateFitError):
            em_fit(np.ones((10, 6)))


# ============================================================================
# Classification
# ============================================================================


class TestClassify:
    @pytest.fixture
    def model(self):
        return GmmModel(
            weights=[0.5, 0.5],
            means=[np.zeros(6), np.full(6, 4.0)],
            variances=[np.ones(6), np.ones(6)],
            real_component=0,
        )

    def test_component_mean_is_its_own_class(self, model):
        result = classify(model, FeatureVector(*np.zeros(6)))
        assert result.label == LABEL_REAL
        assert result.class_name == "real"
        assert result.posterior > 0.5
        assert classify(model, np.full(6, 4.0)).label == LABEL_FAKE

    def test_equidistant_point_is_a_tie(self, model):
        result = classify(model, np.full(6, 2.0))
        assert result.posterior == pytest.approx(0.5, abs=1e-9)

    def test_dimension_mismatch(self, model):
        with pytest.raises(DimensionMismatchError):
            classify(model, np.zeros(5))
        one_d = em_fit(TWO_CLUSTERS)
        with pytest.raises(DimensionMismatchError, match="6-D"):
            classify(one_d, np.zeros(1))

    def test_predict_matches_classify(self, model, rng):
        points = rng.normal(2.0, 2.0, size=(25, 6))
        labels = model.predict(points)
        assert [classify(model, p).label for p in points] == labels.tolist()

    def test_synthetic_corpus_accuracy(self, small_features):
        model = em_fit(small_features.values)
        accuracy = np.mean(model.predict(small_features.values) == small_features.label_array())
        assert accuracy >= 0.85


# ============================================================================
# Feature expectations
# ============================================================================


class TestFeatureExpectations:
    def test_exact_clusters(self):
        m0, m1 = feature_expectations([0, 0, 0, 1, 1, 1])
        assert m0 == pytest.approx(0.0, abs=1e-3)
        assert m1 == pytest.approx(1.0, abs=1e-3)

    def test_ordering(self, rng):
        for seed in range(5):
            column = np.concatenate([rng.normal(5, 1, 20), rng.normal(-3, 1, 20)])
            m0, m1 = feature_expectations(column, seed=seed)
            assert m0 <= m1

    def test_positive_affine_map_moves_expectations(self, rng):
        column = np.concatenate([rng.normal(0, 1, 30), rng.normal(6, 1, 30)])
        m0, m1 = feature_expectations(column)
        t0, t1 = feature_expectations(2.5 * column - 7.0)
        assert t0 == pytest.approx(2.5 * m0 - 7.0, rel=1e-9, abs=1e-9)
        assert t1 == pytest.approx(2.5 * m1 - 7.0, rel=1e-9, abs=1e-9)

    def test_constant_column(self):
        with pytest.raises(DegenerateFitError):
            feature_expectations(np.full(8, 3.0))

    def test_too_short(self):
        with pytest.raises(EmptyInputError):
            feature_expectations([1.0, 2.0])
