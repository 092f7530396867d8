"""
Unsupervised domain adaptation by per-feature expectation scaling.

Each domain's feature columns are fitted with a 1-D two-component mixture;
the two component means (m0 < m1) of column i define the affine map
f -> (f - m0) / (m1 - m0), which sends both means to 0 and 1. The SVM is
trained on the scaled source and applied to the scaled target. Target labels,
when present, only feed the metrics block.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from chromasync.config.configs import GmmConfig, SvmConfig
from chromasync.core.constants import EXPECTATION_GAP_FLOOR, FEATURE_NAMES
from chromasync.core.exceptions import DegenerateExpectationError, DegenerateFitError
from chromasync.core.utils import logger
from chromasync.evaluation.metrics import MetricsReport, evaluate_labels
from chromasync.evaluation.predictions import PredictionSet, predict_table
from chromasync.features.table import FeatureTable, require_rows
from chromasync.models.gmm import feature_expectations
from chromasync.models.persistence import Provenance, load_expectations, save_expectations
from chromasync.models.svm import SvmModel, smo_train


@dataclass(frozen=True)
class ExpectationPair:
    feature: str
    m0: float
    m1: float

    def __post_init__(self) -> None:
        if not (np.isfinite(self.m0) and np.isfinite(self.m1)) or self.m1 - self.m0 < EXPECTATION_GAP_FLOOR:
            raise DegenerateExpectationError(self.feature, self.m0, self.m1)

    @property
    def gap(self) -> float:
        return self.m1 - self.m0


@dataclass(frozen=True)
class ExpectationTable:
    pairs: tuple[ExpectationPair, ...]

    def __post_init__(self) -> None:
        names = tuple(pair.feature for pair in self.pairs)
        if names != FEATURE_NAMES:
            raise ValueError(f"Expectation table must cover {FEATURE_NAMES} in order, got {names}")

    @classmethod
    def from_pairs(cls, pairs) -> "ExpectationTable":
        """Build from six (m0, m1) tuples in feature order."""
        return cls(
            tuple(
                ExpectationPair(name, float(m0), float(m1))
                for name, (m0, m1) in zip(FEATURE_NAMES, pairs)
            )
        )

    @property
    def m0(self) -> np.ndarray:
        return np.array([pair.m0 for pair in self.pairs])

    @property
    def m1(self) -> np.ndarray:
        return np.array([pair.m1 for pair in self.pairs])

    def as_pairs(self) -> list[tuple[float, float]]:
        return [(pair.m0, pair.m1) for pair in self.pairs]

    def save(self, path: str | Path, provenance: Optional[Provenance] = None) -> Path:
        return save_expectations(self.as_pairs(), path, provenance)

    @classmethod
    def load(cls, path: str | Path) -> "ExpectationTable":
        return cls(tuple(ExpectationPair(name, m0, m1) for name, m0, m1 in load_expectations(path)))


def estimate_expectations(
    table: FeatureTable,
    seed: int = 0,
    config: Optional[GmmConfig] = None,
    jobs: int = 1,
) -> ExpectationTable:
    """Fit a 1-D mixture per feature column; labels are never read."""
    require_rows(table)

    def fit_column(index: int) -> ExpectationPair:
        name = FEATURE_NAMES[index]
        try:
            m0, m1 = feature_expectations(table.values[:, index], seed=seed, config=config)
        except DegenerateFitError as e:
            column = table.values[:, index]
            logger.error(f"Feature '{name}' has no two-cluster structure: {e}")
            raise DegenerateExpectationError(name, float(column.min()), float(column.max())) from e
        return ExpectationPair(name, m0, m1)

    # results come back in column order regardless of worker count
    with ThreadPoolExecutor(max_workers=max(1, min(jobs, len(FEATURE_NAMES)))) as pool:
        pairs = tuple(pool.map(fit_column, range(len(FEATURE_NAMES))))
    return ExpectationTable(pairs)


def scale_features(table: FeatureTable, expectations: ExpectationTable) -> FeatureTable:
    """Columnwise (f - m0) / (m1 - m0); values outside [0, 1] are kept."""
    scaled = (table.values - expectations.m0) / (expectations.m1 - expectations.m0)
    return table.with_values(scaled)


@dataclass(frozen=True, eq=False)
class AdaptationResult:
    predictions: PredictionSet
    model: SvmModel
    source_expectations: ExpectationTable
    target_expectations: ExpectationTable
    metrics: Optional[MetricsReport] = None


def adapt_and_predict(
    source: FeatureTable,
    target: FeatureTable,
    svm_config: Optional[SvmConfig] = None,
    *,
    seed: int = 0,
    source_expectations: Optional[ExpectationTable] = None,
    target_expectations: Optional[ExpectationTable] = None,
    gmm_config: Optional[GmmConfig] = None,
    jobs: int = 1,
) -> AdaptationResult:
    """
    Train on the scaled labeled source and predict the scaled target.

    Expectation tables default to label-free estimates from each domain's own
    features; externally supplied tables are used verbatim.
    """
    require_rows(source, "source feature table")
    require_rows(target, "target feature table")
    source_labels = source.svm_labels()

    if source_expectations is None:
        source_expectations = estimate_expectations(source, seed, gmm_config, jobs)
    if target_expectations is None:
        target_expectations = estimate_expectations(target.without_labels(), seed, gmm_config, jobs)

    scaled_source = scale_features(source, source_expectations)
    scaled_target = scale_features(target.without_labels(), target_expectations)

    model = smo_train(scaled_source.values, source_labels, svm_config)
    predictions = predict_table(model, scaled_target)
    report = evaluate_labels(target.label_array(), predictions.labels) if target.is_labeled else None
    logger.info(
        f"Adapted {len(source)} source rows to {len(target)} target rows"
        + (f"; target accuracy {report.accuracy:.4f}" if report else "")
    )
    return AdaptationResult(
        predictions=predictions,
        model=model,
        source_expectations=source_expectations,
        target_expectations=target_expectations,
        metrics=report,
    )
