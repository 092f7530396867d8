"""
Binary classification metrics with fake as the positive class.

Quotients that come out 0/0 are reported as 0 and named in the report's
`degenerate` list instead of raising.
"""

from typing import Mapping

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from rich.table import Table

from chromasync.core.constants import LABEL_FAKE, LABEL_REAL, POSITIVE_CLASS
from chromasync.core.exceptions import DimensionMismatchError, EmptyInputError
from chromasync.core.utils import logger


class ConfusionCounts(BaseModel):
    model_config = ConfigDict(frozen=True)

    tp: int = Field(default=0, ge=0)
    fp: int = Field(default=0, ge=0)
    tn: int = Field(default=0, ge=0)
    fn: int = Field(default=0, ge=0)

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    @classmethod
    def from_labels(cls, truth, predicted) -> "ConfusionCounts":
        """Count outcomes from 0/1 ground truth and 0/1 predictions."""
        truth = np.asarray(truth).ravel()
        predicted = np.asarray(predicted).ravel()
        if truth.shape != predicted.shape:
            raise DimensionMismatchError(
                f"{truth.size} ground-truth labels but {predicted.size} predictions"
            )
        for name, values in (("ground truth", truth), ("predictions", predicted)):
            if not np.all(np.isin(values, (LABEL_REAL, LABEL_FAKE))):
                raise ValueError(f"{name} must be 0 (real) or 1 (fake)")
        is_fake = truth == LABEL_FAKE
        said_fake = predicted == LABEL_FAKE
        return cls(
            tp=int(np.sum(is_fake & said_fake)),
            fp=int(np.sum(~is_fake & said_fake)),
            tn=int(np.sum(~is_fake & ~said_fake)),
            fn=int(np.sum(is_fake & ~said_fake)),
        )


class MetricsReport(BaseModel):
    accuracy: float = Field(ge=0.0, le=1.0)
    recall: float = Field(ge=0.0, le=1.0)
    precision: float = Field(ge=0.0, le=1.0)
    f1: float = Field(ge=0.0, le=1.0)
    counts: ConfusionCounts
    positive_class: str = POSITIVE_CLASS
    degenerate: list[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _counts_not_empty(self) -> "MetricsReport":
        if self.counts.total == 0:
            raise ValueError("A metrics report needs at least one evaluated sample")
        return self


def _ratio(numerator: int, denominator: int) -> tuple[float, bool]:
    if denominator == 0:
        return 0.0, True
    return numerator / denominator, False


def metrics(counts: ConfusionCounts) -> MetricsReport:
    """Accuracy, recall, precision and F1 for one confusion table."""
    if counts.total == 0:
        raise EmptyInputError("Cannot compute metrics over zero samples")

    degenerate: list[str] = []
    accuracy = (counts.tp + counts.tn) / counts.total
    recall, bad = _ratio(counts.tp, counts.tp + counts.fn)
    if bad:
        degenerate.append("recall")
    precision, bad = _ratio(counts.tp, counts.tp + counts.fp)
    if bad:
        degenerate.append("precision")
    if precision + recall == 0.0:
        f1 = 0.0
        degenerate.append("f1")
    else:
        f1 = 2.0 * precision * recall / (precision + recall)

    if degenerate:
        logger.warning(f"Degenerate metric quotients (0/0 reported as 0): {', '.join(degenerate)}")
    return MetricsReport(
        accuracy=accuracy,
        recall=recall,
        precision=precision,
        f1=f1,
        counts=counts,
        degenerate=degenerate,
    )


def evaluate_labels(truth, predicted) -> MetricsReport:
    return metrics(ConfusionCounts.from_labels(truth, predicted))


def render_metrics_table(reports: Mapping[str, MetricsReport], title: str = "Detection metrics") -> Table:
    """Rich table with one row per named report, values to 4 decimal places."""
    table = Table(title=f"{title} (positive class: {POSITIVE_CLASS})")
    table.add_column("Run", style="cyan")
    for column in ("Accuracy", "Recall", "Precision", "F1"):
        table.add_column(column, justify="right")
    table.add_column("TP/FP/TN/FN", justify="right", style="dim")

    for name, report in reports.items():
        c = report.counts
        flagged = set(report.degenerate)
        cells = []
        for metric in ("accuracy", "recall", "precision", "f1"):
            text = f"{getattr(report, metric):.4f}"
            cells.append(f"[yellow]{text}*[/yellow]" if metric in flagged else text)
        table.add_row(name, *cells, f"{c.tp}/{c.fp}/{c.tn}/{c.fn}")
    return table
