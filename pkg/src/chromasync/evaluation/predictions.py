"""Per-row predictions of a fitted model and their CSV form (`path,predicted_label,decision_value`)."""

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from chromasync.core.constants import PREDICTIONS_CSV_HEADER
from chromasync.core.utils import format_float, logger
from chromasync.features.table import FeatureTable
from chromasync.models.gmm import GmmModel
from chromasync.models.svm import SvmModel


@dataclass(frozen=True, eq=False)
class PredictionSet:
    paths: tuple[str, ...]
    labels: np.ndarray
    decision_values: np.ndarray

    def __len__(self) -> int:
        return len(self.paths)

    def write_csv(self, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(PREDICTIONS_CSV_HEADER)
            for name, label, value in zip(self.paths, self.labels, self.decision_values):
                writer.writerow([name, int(label), format_float(value)])
        logger.info(f"Wrote {len(self)} predictions to {path}")
        return path


def predict_table(model: Union[GmmModel, SvmModel], table: FeatureTable) -> PredictionSet:
    """
    Apply a model to every row.

    Decision values are signed so that positive means fake: the SVM decision
    function, or the GMM fake posterior minus 0.5.
    """
    if isinstance(model, SvmModel):
        decisions = model.decision_function(table.values) if len(table) else np.empty(0)
        labels = model.predict(table.values) if len(table) else np.empty(0, dtype=np.int64)
    elif isinstance(model, GmmModel):
        decisions = model.fake_posterior(table.values) - 0.5 if len(table) else np.empty(0)
        labels = model.predict(table.values) if len(table) else np.empty(0, dtype=np.int64)
    else:
        raise TypeError(f"Cannot predict with {type(model).__name__}")
    return PredictionSet(table.paths, np.asarray(labels, dtype=np.int64), np.asarray(decisions))
