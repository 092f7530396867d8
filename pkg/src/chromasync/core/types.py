"""
Value types shared across the pipeline: pixel planes, magnitude spectra and
the six descriptive features.
"""

from dataclasses import astuple, dataclass, field

import numpy as np

from chromasync.core.constants import FEATURE_NAMES, MIN_IMAGE_SIDE
from chromasync.core.exceptions import (
    DimensionMismatchError,
    InvalidImageError,
    NonFiniteInputError,
)


def _frozen_plane(plane: np.ndarray) -> np.ndarray:
    array = np.array(plane, dtype=np.float64, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class RgbImage:
    """Three equally sized H x W planes of intensities in [0, 255]."""

    red: np.ndarray
    green: np.ndarray
    blue: np.ndarray
    width: int = field(init=False)
    height: int = field(init=False)

    def __post_init__(self) -> None:
        planes = [_frozen_plane(p) for p in (self.red, self.green, self.blue)]
        shapes = {p.shape for p in planes}
        if len(shapes) != 1 or planes[0].ndim != 2:
            raise DimensionMismatchError(
                f"RGB planes must be 2-D with identical shapes, got {[p.shape for p in planes]}"
            )
        height, width = planes[0].shape
        if width < MIN_IMAGE_SIDE or height < MIN_IMAGE_SIDE:
            raise InvalidImageError(
                f"Image must be at least {MIN_IMAGE_SIDE}x{MIN_IMAGE_SIDE}, got {width}x{height}"
            )
        for name, plane in zip(("red", "green", "blue"), planes):
            if not np.all(np.isfinite(plane)):
                raise NonFiniteInputError(f"{name} plane contains non-finite values")
            if plane.min() < 0.0 or plane.max() > 255.0:
                raise InvalidImageError(f"{name} plane has intensities outside [0, 255]")
        object.__setattr__(self, "red", planes[0])
        object.__setattr__(self, "green", planes[1])
        object.__setattr__(self, "blue", planes[2])
        object.__setattr__(self, "width", int(width))
        object.__setattr__(self, "height", int(height))

    @classmethod
    def from_array(cls, pixels: np.ndarray) -> "RgbImage":
        """Build from an H x W x 3 array."""
        pixels = np.asarray(pixels)
        if pixels.ndim != 3 or pixels.shape[2] != 3:
            raise DimensionMismatchError(f"Expected an H x W x 3 array, got shape {pixels.shape}")
        return cls(pixels[:, :, 0], pixels[:, :, 1], pixels[:, :, 2])

    def to_array(self) -> np.ndarray:
        """Stack the planes back into an H x W x 3 array."""
        return np.stack([self.red, self.green, self.blue], axis=-1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RgbImage):
            return NotImplemented
        return all(
            np.array_equal(a, b)
            for a, b in zip(
                (self.red, self.green, self.blue), (other.red, other.green, other.blue)
            )
        )

    def __repr__(self) -> str:
        return f"RgbImage(width={self.width}, height={self.height})"


@dataclass(frozen=True, eq=False)
class SpectrumSet:
    """Per-channel magnitude spectra, laid out like the source planes (rows = v)."""

    spec_r: np.ndarray
    spec_g: np.ndarray
    spec_b: np.ndarray
    width: int = field(init=False)
    height: int = field(init=False)

    def __post_init__(self) -> None:
        planes = [_frozen_plane(p) for p in (self.spec_r, self.spec_g, self.spec_b)]
        if len({p.shape for p in planes}) != 1 or planes[0].ndim != 2:
            raise DimensionMismatchError("Spectrum planes must be 2-D with identical shapes")
        for plane in planes:
            if not np.all(np.isfinite(plane)) or plane.min() < 0.0:
                raise NonFiniteInputError("Spectrum values must be finite and non-negative")
        object.__setattr__(self, "spec_r", planes[0])
        object.__setattr__(self, "spec_g", planes[1])
        object.__setattr__(self, "spec_b", planes[2])
        object.__setattr__(self, "height", int(planes[0].shape[0]))
        object.__setattr__(self, "width", int(planes[0].shape[1]))

    def channels(self) -> dict[str, np.ndarray]:
        return {"r": self.spec_r, "g": self.spec_g, "b": self.spec_b}

    def __repr__(self) -> str:
        return f"SpectrumSet(width={self.width}, height={self.height})"


@dataclass(frozen=True)
class FeatureVector:
    """The six descriptive features of one image."""

    mean: float
    max: float
    min: float
    icorr_rg: float
    icorr_rb: float
    icorr_gb: float

    def as_array(self) -> np.ndarray:
        return np.array(astuple(self), dtype=np.float64)

    def as_dict(self) -> dict[str, float]:
        return dict(zip(FEATURE_NAMES, astuple(self)))

    @classmethod
    def from_array(cls, values) -> "FeatureVector":
        values = np.asarray(values, dtype=np.float64).ravel()
        if values.shape != (len(FEATURE_NAMES),):
            raise DimensionMismatchError(
                f"A feature vector has {len(FEATURE_NAMES)} values, got {values.shape[0]}"
            )
        return cls(*(float(v) for v in values))
