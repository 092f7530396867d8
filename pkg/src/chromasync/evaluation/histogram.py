"""Equal-width feature histograms written as CSV (`bin_left,bin_right,count`) for external plotting."""

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from chromasync.core.constants import CLASS_NAMES, FEATURE_NAMES, HISTOGRAM_CSV_HEADER
from chromasync.core.exceptions import EmptyInputError
from chromasync.core.utils import ensure_finite, format_float, logger
from chromasync.features.table import FeatureTable


@dataclass(frozen=True, eq=False)
class Histogram:
    edges: np.ndarray
    counts: np.ndarray

    @property
    def bin_width(self) -> float:
        return float(self.edges[1] - self.edges[0])

    def mode_center(self) -> float:
        peak = int(np.argmax(self.counts))
        return float((self.edges[peak] + self.edges[peak + 1]) / 2.0)

    def write_csv(self, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(HISTOGRAM_CSV_HEADER)
            for left, right, count in zip(self.edges[:-1], self.edges[1:], self.counts):
                writer.writerow([format_float(left), format_float(right), int(count)])
        return path


def span(values) -> tuple[float, float]:
    """[min, max] of the values, widened to [min, min + 1] when they are all equal."""
    data = np.asarray(values, dtype=np.float64).ravel()
    lo, hi = float(data.min()), float(data.max())
    if hi <= lo:
        hi = lo + 1.0
    return lo, hi


def histogram(values, bins: int, value_range: Optional[tuple[float, float]] = None) -> Histogram:
    """
    Counts over `bins` equal-width bins spanning [min, max] (or `value_range`).

    Every bin is half-open except the last, which is closed, so the counts
    add up to the number of values.
    """
    data = np.asarray(values, dtype=np.float64).ravel()
    if data.size == 0:
        raise EmptyInputError("Cannot build a histogram of zero values")
    if bins < 1:
        raise ValueError(f"bins must be at least 1, got {bins}")
    ensure_finite(data, "Histogram input")
    lo, hi = value_range if value_range is not None else span(data)
    counts, edges = np.histogram(data, bins=bins, range=(lo, hi))
    return Histogram(edges=edges, counts=counts)


def feature_histogram(table: FeatureTable, feature: str, bins: int) -> Histogram:
    return histogram(_column(table, feature), bins)


def histograms_by_label(table: FeatureTable, feature: str, bins: int) -> dict[str, Histogram]:
    """One histogram per class over shared bin edges, keyed 'real' / 'fake'."""
    column = _column(table, feature)
    labels = table.label_array()
    shared = span(column)
    result: dict[str, Histogram] = {}
    for label, name in CLASS_NAMES.items():
        members = column[labels == label]
        if members.size == 0:
            logger.warning(f"No '{name}' rows for feature '{feature}'; histogram is all zeros")
            edges = np.linspace(shared[0], shared[1], bins + 1)
            result[name] = Histogram(edges=edges, counts=np.zeros(bins, dtype=np.int64))
        else:
            result[name] = histogram(members, bins, shared)
    return result


def _column(table: FeatureTable, feature: str) -> np.ndarray:
    if feature not in FEATURE_NAMES:
        raise ValueError(f"Unknown feature '{feature}'; choose one of {', '.join(FEATURE_NAMES)}")
    if len(table) == 0:
        raise EmptyInputError("Cannot build a histogram of an empty feature table")
    return table.values[:, FEATURE_NAMES.index(feature)]
