import numpy as np
import pytest

from chromasync.core.manifest import DatasetManifest
from chromasync.core.utils import logger
from chromasync.features.extractor import extract_batch
from chromasync.imaging.synthgen import SynthConfig, gen_corpus


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def small_corpus(tmp_path_factory):
    """40 real + 40 fake 32x32 images and their manifest path."""
    out_dir = tmp_path_factory.mktemp("corpus")
    cfg = SynthConfig(count=40, size=32, seed=11)
    return gen_corpus(cfg, out_dir, jobs=4)


@pytest.fixture(scope="session")
def small_features(small_corpus):
    return extract_batch(DatasetManifest.read(small_corpus), jobs=4)


@pytest.fixture
def chromasync_log(caplog):
    """caplog wired to the package logger, which does not propagate to root."""
    logger.addHandler(caplog.handler)
    yield caplog
    logger.removeHandler(caplog.handler)
