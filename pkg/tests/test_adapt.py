import numpy as np
import pytest

from chromasync.adapt.domain_adaptation import (
    ExpectationPair,
    ExpectationTable,
    adapt_and_predict,
    estimate_expectations,
    scale_features,
)
from chromasync.core.exceptions import DegenerateExpectationError, SingleClassError
from chromasync.features.table import FeatureTable, split_table
from chromasync.models.persistence import save_expectations
from chromasync.models.svm import smo_train


def _table(values, labels=None) -> FeatureTable:
    values = np.asarray(values, dtype=float)
    labels = labels if labels is not None else [None] * len(values)
    return FeatureTable(tuple(f"row_{i}" for i in range(len(values))), tuple(labels), values)


def _two_cluster_table(rng, n=20) -> FeatureTable:
    low = rng.normal(0.0, 0.1, size=(n, 6))
    high = rng.normal(1.0, 0.1, size=(n, 6))
    return _table(np.vstack([low, high]), [0] * n + [1] * n)


class TestExpectationTable:
    def test_degenerate_pair_names_feature(self):
        with pytest.raises(DegenerateExpectationError, match="icorr_rb") as exc_info:
            ExpectationTable.from_pairs([(0, 1), (0, 1), (0, 1), (0, 1), (2, 2), (0, 1)])
        assert exc_info.value.feature == "icorr_rb"

    def test_reversed_pair_is_degenerate(self):
        with pytest.raises(DegenerateExpectationError):
            ExpectationPair("mean", 3.0, 1.0)

    def test_save_and_load(self, tmp_path):
        table = ExpectationTable.from_pairs([(i, i + 0.5) for i in range(6)])
        loaded = ExpectationTable.load(table.save(tmp_path / "e.json"))
        assert loaded == table

    def test_loading_degenerate_file_names_feature(self, tmp_path):
        path = save_expectations([(0.0, 1.0)] * 5 + [(1.0, 1.0)], tmp_path / "bad.json")
        with pytest.raises(DegenerateExpectationError, match="icorr_gb"):
            ExpectationTable.load(path)


class TestScaleFeatures:
    def test_midpoint_and_anchors(self):
        expectations = ExpectationTable.from_pairs([(2.0, 6.0)] * 6)
        scaled = scale_features(_table([[4.0] * 6, [2.0] * 6, [6.0] * 6, [10.0] * 6]), expectations)
        np.testing.assert_allclose(scaled.values[:, 0], [0.5, 0.0, 1.0, 2.0])

    def test_labels_and_paths_preserved(self, rng):
        table = _two_cluster_table(rng)
        scaled = scale_features(table, ExpectationTable.from_pairs([(0.0, 2.0)] * 6))
        assert scaled.paths == table.paths and scaled.labels == table.labels

    def test_fixed_point_on_exact_clusters(self):
        column = np.array([0.0] * 5 + [1.0] * 5)
        table = _table(np.tile(column[:, None], (1, 6)) * 3.0 + 2.0)
        once = scale_features(table, estimate_expectations(table))
        twice = scale_features(once, estimate_expectations(once))
        np.testing.assert_allclose(once.values, twice.values, atol=1e-9)
        np.testing.assert_allclose(once.values[:, 0], column, atol=1e-9)


class TestEstimateExpectations:
    def test_recovers_cluster_means(self, rng):
        table = _two_cluster_table(rng, n=50)
        expectations = estimate_expectations(table)
        np.testing.assert_allclose(expectations.m0, 0.0, atol=0.1)
        np.testing.assert_allclose(expectations.m1, 1.0, atol=0.1)

    def test_parallel_matches_serial(self, rng):
        table = _two_cluster_table(rng)
        assert estimate_expectations(table, jobs=1) == estimate_expectations(table, jobs=6)

    def test_constant_column_names_feature(self, rng):
        values = rng.normal(size=(10, 6))
        values[:, 1] = 4.0
        with pytest.raises(DegenerateExpectationError, match="'max'"):
            estimate_expectations(_table(values))


class TestAdaptAndPredict:
    def test_self_adaptation_matches_in_domain(self, small_features):
        train, test = split_table(small_features, seed=2)
        in_domain = smo_train(train.values, train.svm_labels())
        in_domain_accuracy = np.mean(in_domain.predict(test.values) == test.label_array())
        result = adapt_and_predict(train, test)
        assert abs(result.metrics.accuracy - in_domain_accuracy) <= 0.02 + 1e-12

    def test_affine_target_gives_identical_predictions(self, small_features, rng):
        baseline = adapt_and_predict(small_features, small_features.without_labels())
        a = rng.uniform(0.5, 3.0, size=6)
        b = rng.uniform(-5.0, 5.0, size=6)
        shifted = small_features.without_labels().with_values(small_features.values * a + b)
        result = adapt_and_predict(small_features, shifted)
        np.testing.assert_array_equal(result.predictions.labels, baseline.predictions.labels)
        np.testing.assert_allclose(
            result.predictions.decision_values, baseline.predictions.decision_values, atol=1e-9
        )

    def test_target_labels_only_affect_metrics(self, small_features):
        flipped_labels = tuple(1 - label for label in small_features.labels)
        flipped = FeatureTable(small_features.paths, flipped_labels, small_features.values)
        a = adapt_and_predict(small_features, small_features)
        b = adapt_and_predict(small_features, flipped)
        np.testing.assert_array_equal(a.predictions.decision_values, b.predictions.decision_values)
        assert a.metrics.accuracy == pytest.approx(1.0 - b.metrics.accuracy)

    def test_unlabeled_target_has_no_metrics(self, small_features):
        result = adapt_and_predict(small_features, small_features.without_labels())
        assert result.metrics is None
        assert len(result.predictions) == len(small_features)

    def test_supplied_expectations_used_verbatim(self, small_features):
        estimated = estimate_expectations(small_features)
        result = adapt_and_predict(
            small_features,
            small_features,
            source_expectations=estimated,
            target_expectations=estimated,
        )
        assert result.target_expectations is estimated

    def test_single_class_source(self, rng):
        source = _table(rng.normal(size=(10, 6)), [0] * 10)
        with pytest.raises(SingleClassError, match="fake"):
            adapt_and_predict(source, _two_cluster_table(rng))
