"""
ChromaSync

GAN-generated image detection from the asynchrony between the frequency
spectra of an image's color channels.
"""

from .core.exceptions import ChromaSyncError
from .core.types import FeatureVector, RgbImage, SpectrumSet
from .core.utils import logger

from .imaging import SynthConfig, gen_corpus, load_image
from .spectral import dft2_fast, dft2_naive, spectrum
from .features import FeatureTable, extract, extract_batch
from .models import GmmModel, SvmModel, classify, decision, em_fit, load_model, save_model, smo_train
from .adapt import ExpectationTable, adapt_and_predict, scale_features
from .evaluation import ConfusionCounts, histogram, metrics

__all__ = [
    "ChromaSyncError",
    "FeatureVector",
    "RgbImage",
    "SpectrumSet",
    "logger",
    "SynthConfig",
    "gen_corpus",
    "load_image",
    "dft2_fast",
    "dft2_naive",
    "spectrum",
    "FeatureTable",
    "extract",
    "extract_batch",
    "GmmModel",
    "SvmModel",
    "em_fit",
    "classify",
    "smo_train",
    "decision",
    "save_model",
    "load_model",
    "ExpectationTable",
    "adapt_and_predict",
    "scale_features",
    "ConfusionCounts",
    "metrics",
    "histogram",
]
