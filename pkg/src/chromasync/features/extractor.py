"""
Reduction of per-channel magnitude spectra to the six descriptive features:
the mean, max and min of the pairwise average spectrum differences, and the
inverse Pearson correlations 1 - rho for each channel pair.
"""

from collections import deque
from concurrent.futures import ThreadPoolExecutor
from itertools import islice
from typing import Optional

import numpy as np

from chromasync.core.constants import PEARSON_VARIANCE_FLOOR
from chromasync.core.exceptions import ChromaSyncError, DimensionMismatchError
from chromasync.core.manifest import DatasetManifest, ManifestEntry
from chromasync.core.types import FeatureVector, SpectrumSet
from chromasync.core.utils import logger
from chromasync.features.table import FeatureTable
from chromasync.imaging.imageio import load_image
from chromasync.spectral.spectrum import spectrum


def _check_shapes(spec_a: np.ndarray, spec_b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(spec_a, dtype=np.float64)
    b = np.asarray(spec_b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"Spectrum shapes differ: {a.shape} vs {b.shape}")
    return a, b


def pairwise_diff(spec_a, spec_b) -> float:
    """Average absolute difference between two spectra over all W*H bins."""
    a, b = _check_shapes(spec_a, spec_b)
    return float(np.mean(np.abs(a - b)))


def pearson(spec_a, spec_b) -> float:
    """
    Pearson correlation of the flattened spectra, DC bin included.

    Returns 0 when either spectrum has variance below 1e-12.
    """
    a, b = _check_shapes(spec_a, spec_b)
    if a.size < 2:
        raise DimensionMismatchError("Pearson correlation needs at least 2 bins")
    da = a.ravel() - a.mean()
    db = b.ravel() - b.mean()
    var_a = float(np.dot(da, da)) / a.size
    var_b = float(np.dot(db, db)) / b.size
    if var_a < PEARSON_VARIANCE_FLOOR or var_b < PEARSON_VARIANCE_FLOOR:
        return 0.0
    rho = float(np.dot(da, db)) / (np.sqrt(float(np.dot(da, da))) * np.sqrt(float(np.dot(db, db))))
    return float(np.clip(rho, -1.0, 1.0))


def extract(spectra: SpectrumSet) -> FeatureVector:
    r, g, b = spectra.spec_r, spectra.spec_g, spectra.spec_b
    diffs = (pairwise_diff(r, g), pairwise_diff(r, b), pairwise_diff(g, b))
    return FeatureVector(
        mean=(diffs[0] + diffs[1] + diffs[2]) / 3.0,
        max=max(diffs),
        min=min(diffs),
        icorr_rg=-pearson(r, g) + 1.0,
        icorr_rb=-pearson(r, b) + 1.0,
        icorr_gb=-pearson(g, b) + 1.0,
    )


def extract_image_features(path) -> FeatureVector:
    """imageio -> spectral -> features for one file."""
    return extract(spectrum(load_image(path)))


def extract_batch(
    manifest: DatasetManifest, permissive: bool = False, jobs: int = 1
) -> FeatureTable:
    """
    One feature row per manifest entry, in manifest order.

    With `permissive`, entries that fail to load are logged with their path and
    skipped; otherwise the first failure aborts the batch.
    """

    def _process(entry: ManifestEntry) -> tuple[ManifestEntry, Optional[FeatureVector], Optional[Exception]]:
        try:
            return entry, extract_image_features(manifest.resolve(entry)), None
        except (ChromaSyncError, OSError) as e:
            return entry, None, e

    workers = max(1, jobs)
    paths, labels, rows, skipped = [], [], [], []
    with ThreadPoolExecutor(max_workers=workers) as executor:
        # at most `workers` entries in flight; results are consumed in manifest order
        remaining = iter(manifest.entries)
        pending = deque(executor.submit(_process, entry) for entry in islice(remaining, workers))
        while pending:
            entry, vector, error = pending.popleft().result()
            if error is not None:
                if not permissive:
                    for future in pending:
                        future.cancel()
                    raise error
                logger.warning(f"Skipping unreadable entry {entry.path}: {error}")
                skipped.append(entry.path)
            else:
                paths.append(entry.path)
                labels.append(entry.label)
                rows.append(vector.as_array())
            upcoming = next(remaining, None)
            if upcoming is not None:
                pending.append(executor.submit(_process, upcoming))

    if skipped:
        logger.warning(f"Skipped {len(skipped)} of {len(manifest)} entries: {', '.join(skipped)}")
    return FeatureTable.from_rows(paths, labels, rows)
