"""
Benchmark protocols over a labeled feature table.

- benchmark: 50/50 stratified split; GMM fitted without labels and SVM fitted
  with labels on the train half, both scored on the test half.
- unbalanced: same split, then the training fakes are subsampled to a given
  share of the training set while the test half stays as split.
"""

from typing import Optional, Sequence

import numpy as np

from chromasync.config.configs import GmmConfig, SvmConfig
from chromasync.core.constants import LABEL_FAKE, LABEL_REAL
from chromasync.core.utils import logger
from chromasync.evaluation.metrics import MetricsReport, evaluate_labels
from chromasync.evaluation.predictions import predict_table
from chromasync.features.table import FeatureTable, require_rows, split_table
from chromasync.imaging.synthgen import fake_count
from chromasync.models.gmm import em_fit
from chromasync.models.svm import smo_train

DEFAULT_FRACTIONS = (0.5, 0.25, 0.05, 0.01)


def run_benchmark(
    table: FeatureTable,
    seed: int = 0,
    svm_config: Optional[SvmConfig] = None,
    gmm_config: Optional[GmmConfig] = None,
) -> dict[str, MetricsReport]:
    require_rows(table)
    train, test = split_table(table, test_fraction=0.5, seed=seed)
    truth = test.label_array()

    gmm = em_fit(train.values, gmm_config or GmmConfig(seed=seed))
    svm = smo_train(train.values, train.svm_labels(), svm_config)
    reports = {
        "gmm": evaluate_labels(truth, predict_table(gmm, test).labels),
        "svm": evaluate_labels(truth, predict_table(svm, test).labels),
    }
    for name, report in reports.items():
        logger.info(f"benchmark {name}: accuracy {report.accuracy:.4f}, f1 {report.f1:.4f}")
    return reports


def run_unbalanced(
    table: FeatureTable,
    fractions: Sequence[float] = DEFAULT_FRACTIONS,
    seed: int = 0,
    svm_config: Optional[SvmConfig] = None,
) -> dict[float, MetricsReport]:
    require_rows(table)
    train, test = split_table(table, test_fraction=0.5, seed=seed)
    truth = test.label_array()
    labels = train.label_array()
    reals = np.flatnonzero(labels == LABEL_REAL)
    fakes = np.flatnonzero(labels == LABEL_FAKE)
    rng = np.random.default_rng(seed)
    shuffled_fakes = rng.permutation(fakes)

    reports: dict[float, MetricsReport] = {}
    for fraction in fractions:
        wanted = fake_count(len(reals), fraction)
        if wanted > len(fakes):
            logger.warning(
                f"Fraction {fraction} needs {wanted} training fakes, only {len(fakes)} available"
            )
            wanted = len(fakes)
        # nested subsets: smaller fractions keep a prefix of the same fakes
        chosen = np.sort(np.concatenate([reals, shuffled_fakes[:wanted]]))
        subset = train.subset(chosen.tolist())
        svm = smo_train(subset.values, subset.svm_labels(), svm_config)
        reports[fraction] = evaluate_labels(truth, predict_table(svm, test).labels)
        logger.info(
            f"unbalanced fraction {fraction}: {len(reals)} real + {wanted} fake training rows, "
            f"f1 {reports[fraction].f1:.4f}"
        )
    return reports
