from pathlib import Path

import numpy as np

from chromasync.core.types import RgbImage, SpectrumSet
from chromasync.core.utils import format_float, logger
from chromasync.spectral.dft import dft2_fast


def magnitude(plane) -> np.ndarray:
    """Elementwise modulus of the plane's 2-D DFT."""
    return np.abs(dft2_fast(plane))


def spectrum(img: RgbImage) -> SpectrumSet:
    """Per-channel magnitude spectra; no fftshift, log scaling or normalization."""
    return SpectrumSet(magnitude(img.red), magnitude(img.green), magnitude(img.blue))


def write_plane_csv(plane: np.ndarray, path: str | Path) -> Path:
    """H rows of W comma-separated values, 17 significant digits."""
    path = Path(path)
    lines = (",".join(format_float(v) for v in row) for row in plane)
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    return path


def read_plane_csv(path: str | Path) -> np.ndarray:
    rows = [
        [float(v) for v in line.split(",")]
        for line in Path(path).read_text(encoding="utf-8").splitlines()
        if line.strip()
    ]
    return np.array(rows, dtype=np.float64)


def dump_spectrum_csv(spectra: SpectrumSet, out_dir: str | Path) -> list[Path]:
    """Write spec_r.csv, spec_g.csv and spec_b.csv into `out_dir`."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = [
        write_plane_csv(plane, out_dir / f"spec_{channel}.csv")
        for channel, plane in spectra.channels().items()
    ]
    logger.info(f"Dumped {spectra.width}x{spectra.height} spectra to {out_dir}")
    return written
