import hashlib
import logging
import sys
from pathlib import Path

import colorlog
import numpy as np
from decouple import config as decouple_config
from rich.console import Console

from chromasync.core.exceptions import NonFiniteInputError

console = Console()
logger = logging.getLogger("chromasync")
logger.setLevel(decouple_config("CHROMASYNC_LOG_LEVEL", default="INFO").upper())
logger.propagate = False


for handler in logger.handlers[:]:
    logger.removeHandler(handler)

# stdout carries command output, so logs go to stderr
console_handler = logging.StreamHandler(sys.stderr)

console_formatter = colorlog.ColoredFormatter(
    "%(log_color)s%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    datefmt="%Y-%m-%d %H:%M:%S",
)
console_handler.setFormatter(console_formatter)
logger.addHandler(console_handler)

log_file = decouple_config("CHROMASYNC_LOG_FILE", default="")
if log_file:
    file_handler = logging.FileHandler(Path(log_file), mode="a")
    file_handler.setFormatter(
        logging.Formatter(
            "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
        )
    )
    logger.addHandler(file_handler)


def hash_bytes(data: bytes) -> str:
    """Generate a sha256 hex digest for raw bytes."""
    return hashlib.sha256(data).hexdigest()


def file_digest(path: str | Path) -> str:
    """Content digest of a file, used in model provenance blocks."""
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def format_float(value: float) -> str:
    """Serialize a float with 17 significant digits (lossless round trip)."""
    return format(float(value), ".17g")


def ensure_finite(array: np.ndarray, what: str) -> None:
    """Raise NonFiniteInputError if the array holds NaN or infinity."""
    if not np.all(np.isfinite(array)):
        raise NonFiniteInputError(f"{what} contains non-finite values")
