"""
Core building blocks shared by every chromasync subpackage:
- Logging and console (utils)
- Label and file-format constants
- Exception hierarchy
- Image, spectrum and feature value types
- Dataset manifests
"""

from .exceptions import ChromaSyncError
from .manifest import DatasetManifest, ManifestEntry
from .types import FeatureVector, RgbImage, SpectrumSet
from .utils import logger

__all__ = [
    "ChromaSyncError",
    "DatasetManifest",
    "FeatureVector",
    "ManifestEntry",
    "RgbImage",
    "SpectrumSet",
    "logger",
]
