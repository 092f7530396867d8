"""
Feature tables: rows of six features paired with a path and an optional label,
persisted as CSV (`path,label,mean,max,min,icorr_rg,icorr_rb,icorr_gb`).
"""

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from chromasync.core.constants import (
    FEATURE_CSV_HEADER,
    FEATURE_NAMES,
    LABEL_FAKE,
    LABEL_REAL,
    SVM_FAKE,
    SVM_REAL,
)
from chromasync.core.exceptions import (
    DimensionMismatchError,
    EmptyInputError,
    ManifestError,
)
from chromasync.core.utils import ensure_finite, format_float


@dataclass(frozen=True, eq=False)
class FeatureTable:
    paths: tuple[str, ...]
    labels: tuple[Optional[int], ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64, copy=True).reshape(-1, len(FEATURE_NAMES))
        if not (len(self.paths) == len(self.labels) == values.shape[0]):
            raise DimensionMismatchError(
                f"Feature table columns disagree: {len(self.paths)} paths, "
                f"{len(self.labels)} labels, {values.shape[0]} rows"
            )
        ensure_finite(values, "Feature table")
        values.setflags(write=False)
        object.__setattr__(self, "paths", tuple(self.paths))
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "values", values)

    @classmethod
    def from_rows(
        cls,
        paths: Sequence[str],
        labels: Sequence[Optional[int]],
        rows: Sequence[np.ndarray],
    ) -> "FeatureTable":
        values = np.vstack(rows) if len(rows) else np.empty((0, len(FEATURE_NAMES)))
        return cls(tuple(paths), tuple(labels), values)

    def __len__(self) -> int:
        return len(self.paths)

    @property
    def is_labeled(self) -> bool:
        return len(self) > 0 and all(label is not None for label in self.labels)

    def label_array(self) -> np.ndarray:
        """Labels as 0/1 integers; raises if any row is unlabeled."""
        if not self.is_labeled:
            raise ManifestError("Feature table has unlabeled rows; labels are required here")
        return np.array(self.labels, dtype=np.int64)

    def svm_labels(self) -> np.ndarray:
        """Labels in the SVM convention (real = -1, fake = +1)."""
        return np.where(self.label_array() == LABEL_FAKE, SVM_FAKE, SVM_REAL)

    def subset(self, indices: Sequence[int]) -> "FeatureTable":
        indices = list(indices)
        return FeatureTable(
            tuple(self.paths[i] for i in indices),
            tuple(self.labels[i] for i in indices),
            self.values[indices] if indices else np.empty((0, len(FEATURE_NAMES))),
        )

    def with_values(self, values: np.ndarray) -> "FeatureTable":
        return FeatureTable(self.paths, self.labels, values)

    def without_labels(self) -> "FeatureTable":
        return FeatureTable(self.paths, (None,) * len(self), self.values)

    def write_csv(self, path: str | Path) -> Path:
        path = Path(path)
        with open(path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(FEATURE_CSV_HEADER)
            for name, label, row in zip(self.paths, self.labels, self.values):
                writer.writerow(
                    [name, "" if label is None else str(label)]
                    + [format_float(v) for v in row]
                )
        return path

    @classmethod
    def read_csv(cls, path: str | Path) -> "FeatureTable":
        path = Path(path)
        try:
            with open(path, newline="", encoding="utf-8") as handle:
                rows = list(csv.reader(handle))
        except OSError as e:
            raise ManifestError(f"Cannot read feature table {path}: {e}") from e

        if not rows:
            raise EmptyInputError(f"Feature table {path} is empty (no header)")
        if tuple(rows[0]) != FEATURE_CSV_HEADER:
            raise ManifestError(
                f"Feature table {path} has header {rows[0]}, expected {list(FEATURE_CSV_HEADER)}"
            )

        paths, labels, values = [], [], []
        for lineno, row in enumerate(rows[1:], start=2):
            if not row:
                continue
            if len(row) != len(FEATURE_CSV_HEADER):
                raise ManifestError(f"{path}:{lineno}: expected {len(FEATURE_CSV_HEADER)} columns")
            label_text = row[1].strip()
            if label_text not in ("", "0", "1"):
                raise ManifestError(f"{path}:{lineno}: label must be 0, 1 or empty, got '{label_text}'")
            try:
                values.append([float(v) for v in row[2:]])
            except ValueError as e:
                raise ManifestError(f"{path}:{lineno}: {e}") from e
            paths.append(row[0])
            labels.append(None if label_text == "" else int(label_text))

        array = np.array(values, dtype=np.float64) if values else np.empty((0, len(FEATURE_NAMES)))
        return cls(tuple(paths), tuple(labels), array)


def require_rows(table: FeatureTable, what: str = "feature table") -> None:
    if len(table) == 0:
        raise EmptyInputError(f"The {what} has no rows")


def split_table(
    table: FeatureTable, test_fraction: float = 0.5, seed: int = 0
) -> tuple[FeatureTable, FeatureTable]:
    """
    Deterministic label-stratified split into (train, test).

    Each class is shuffled with a seeded generator and its first
    round(n * test_fraction) rows go to the test part; row order inside each
    part follows the original table.
    """
    if not 0.0 < test_fraction < 1.0:
        raise ValueError(f"test_fraction must be in (0, 1), got {test_fraction}")
    labels = table.label_array()
    rng = np.random.default_rng(seed)
    test_indices: list[int] = []
    for label in (LABEL_REAL, LABEL_FAKE):
        members = np.flatnonzero(labels == label)
        shuffled = rng.permutation(members)
        test_indices.extend(int(i) for i in shuffled[: int(round(len(members) * test_fraction))])
    test_set = set(test_indices)
    train = [i for i in range(len(table)) if i not in test_set]
    test = sorted(test_set)
    return table.subset(train), table.subset(test)
