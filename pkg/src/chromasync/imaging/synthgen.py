"""
Synthetic labeled corpora for exercising every classifier without the
original GAN datasets.

Real-like images carry three channels that are affine functions of one
smoothed base plane, so their magnitude spectra agree up to a gain away from
DC. Fake-like images add an independent checkerboard-modulated noise field to
each channel, which makes the channel spectra disagree where the smooth base
plane has almost no energy (high frequencies).
"""

import math
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field
from scipy.ndimage import uniform_filter

from chromasync.core.constants import CLASS_NAMES, LABEL_FAKE, LABEL_REAL
from chromasync.core.manifest import DatasetManifest, ManifestEntry
from chromasync.core.types import RgbImage
from chromasync.core.utils import logger
from chromasync.imaging.imageio import save_png

MANIFEST_NAME = "manifest.jsonl"
GAIN_RANGE = (0.8, 1.2)
OFFSET_RANGE = (-10.0, 10.0)
NOISE_AMPLITUDE_RANGE = (0.5, 1.0)
MID_GREY = 127.5


class SynthConfig(BaseModel):
    """Corpus generation parameters; identical configs give identical corpora."""

    count: int = Field(..., ge=1, description="Images per class (real count)")
    size: int = Field(..., ge=8, description="Side length in pixels")
    fake_fraction: float = Field(default=0.5, ge=0.0, le=1.0)
    seed: int = Field(default=0, ge=0, lt=2**64)
    noise_amplitude: float = Field(default=8.0, ge=0.0)
    base_smoothing: int = Field(default=2, ge=0, description="Box kernel radius")
    base_contrast: float = Field(
        default=12.0, gt=0.0, description="Std of the base plane around mid-grey"
    )

    model_config = {"frozen": True}

    def class_counts(self) -> tuple[int, int]:
        """Return (real, fake) image counts honoring fake_fraction."""
        f = self.fake_fraction
        if f == 0.0:
            return self.count, 0
        if f == 1.0:
            return 0, self.count
        return self.count, fake_count(self.count, f)


def fake_count(n_real: int, fraction: float) -> int:
    """Number of fakes that make up `fraction` of a set with `n_real` reals (at least one)."""
    if not 0.0 < fraction < 1.0:
        raise ValueError(f"fraction must be in (0, 1), got {fraction}")
    return max(1, math.floor(n_real * fraction / (1.0 - fraction) + 1e-9))


def image_rng(seed: int, label: int, index: int) -> np.random.Generator:
    """Per-image generator derived from (seed, label, index)."""
    return np.random.default_rng([seed, label, index])


def _base_plane(size: int, rng: np.random.Generator, cfg: SynthConfig) -> np.ndarray:
    field = rng.standard_normal((size, size))
    if cfg.base_smoothing > 0:
        field = uniform_filter(field, size=2 * cfg.base_smoothing + 1, mode="wrap")
    field = field - field.mean()
    std = field.std()
    if std > 0:
        field = field / std
    return MID_GREY + cfg.base_contrast * field


def _quantize(plane: np.ndarray) -> np.ndarray:
    return np.clip(np.rint(plane), 0.0, 255.0)


def gen_real_like(
    size: int,
    rng: np.random.Generator,
    cfg: SynthConfig,
    *,
    gains: Optional[Sequence[float]] = None,
    offsets: Optional[Sequence[float]] = None,
) -> RgbImage:
    """
    One channel-correlated image: channel c = clamp(a_c * L + b_c).

    Gains are drawn from [0.8, 1.2] and offsets from [-10, 10]; explicit
    `gains` / `offsets` replace the drawn values without changing the draws.
    """
    base = _base_plane(size, rng, cfg)
    drawn_gains = rng.uniform(*GAIN_RANGE, size=3)
    drawn_offsets = rng.uniform(*OFFSET_RANGE, size=3)
    a = np.asarray(gains if gains is not None else drawn_gains, dtype=np.float64)
    b = np.asarray(offsets if offsets is not None else drawn_offsets, dtype=np.float64)
    planes = [_quantize(a[c] * base + b[c]) for c in range(3)]
    return RgbImage(*planes)


def checkerboard(size: int, parity: int) -> np.ndarray:
    y, x = np.indices((size, size))
    return np.where((x + y + parity) % 2 == 0, 1.0, -1.0)


def gen_fake_like(size: int, rng: np.random.Generator, cfg: SynthConfig) -> RgbImage:
    """
    One channel-asynchronous image: a real-like image plus, per channel, white
    noise modulated by a checkerboard with its own random parity and amplitude
    drawn from [0.5, 1.0] * noise_amplitude.
    """
    real = gen_real_like(size, rng, cfg)
    planes = []
    for plane in (real.red, real.green, real.blue):
        amplitude = rng.uniform(*NOISE_AMPLITUDE_RANGE) * cfg.noise_amplitude
        parity = int(rng.integers(0, 2))
        noise = rng.standard_normal((size, size))
        planes.append(_quantize(plane + amplitude * noise * checkerboard(size, parity)))
    return RgbImage(*planes)


def generate_image(cfg: SynthConfig, label: int, index: int) -> RgbImage:
    """Generate corpus image `index` of the given class deterministically."""
    rng = image_rng(cfg.seed, label, index)
    if label == LABEL_FAKE:
        return gen_fake_like(cfg.size, rng, cfg)
    return gen_real_like(cfg.size, rng, cfg)


def gen_corpus(cfg: SynthConfig, out_dir: str | Path, jobs: int = 1) -> Path:
    """
    Write the corpus PNGs and a JSONL manifest into `out_dir`.

    Reals come first, then fakes; file names are `<class>_<index>.png` and
    manifest paths are relative to the manifest's directory.

    Returns:
        Path to the written manifest.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    n_real, n_fake = cfg.class_counts()
    plan = [(LABEL_REAL, i) for i in range(n_real)] + [(LABEL_FAKE, i) for i in range(n_fake)]
    logger.info(
        f"Generating synthetic corpus: {n_real} real + {n_fake} fake, "
        f"{cfg.size}x{cfg.size}, seed={cfg.seed} -> {out_dir}"
    )

    def _write(item: tuple[int, int]) -> ManifestEntry:
        label, index = item
        name = f"{CLASS_NAMES[label]}_{index:05d}.png"
        save_png(generate_image(cfg, label, index), out_dir / name)
        return ManifestEntry(path=name, label=label)

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as executor:
        entries = list(executor.map(_write, plan))

    manifest_path = DatasetManifest(entries=entries).write(out_dir / MANIFEST_NAME)
    logger.info(f"Wrote {len(entries)} images and manifest {manifest_path}")
    return manifest_path
