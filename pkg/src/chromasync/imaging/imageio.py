"""
Raster decoding into channel-separated planes.

PNG and JPEG are decoded with Pillow. Intensities stay on the decoded 8-bit
scale promoted to float64; no [0, 1] rescaling is applied.
"""

from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from chromasync.core.constants import MIN_IMAGE_SIDE
from chromasync.core.exceptions import InvalidImageError
from chromasync.core.types import RgbImage
from chromasync.core.utils import logger

SUPPORTED_FORMATS = {"PNG", "JPEG"}
_GRAY_MODES = {"1", "L", "LA"}
_COLOR_MODES = {"RGB", "RGBA", "P", "PA", "CMYK", "YCbCr"}


def load_image(path: str | Path) -> RgbImage:
    """
    Decode a PNG or JPEG file into an RgbImage.

    Grayscale sources are replicated into three identical planes and any alpha
    channel is discarded.

    Raises:
        InvalidImageError: unreadable file, unsupported format or mode, or a
            decoded side shorter than 2 pixels.
    """
    path = Path(path)
    try:
        with Image.open(path) as handle:
            image_format = handle.format
            if image_format not in SUPPORTED_FORMATS:
                raise InvalidImageError(
                    f"Unsupported image format '{image_format}' for {path}; expected PNG or JPEG"
                )
            mode = handle.mode
            if mode in _GRAY_MODES:
                gray = np.asarray(handle.convert("L"), dtype=np.float64)
                pixels = np.repeat(gray[:, :, None], 3, axis=2)
            elif mode in _COLOR_MODES:
                pixels = np.asarray(handle.convert("RGB"), dtype=np.float64)
            else:
                raise InvalidImageError(
                    f"Unsupported pixel mode '{mode}' for {path}; only 8-bit images are accepted"
                )
    except (FileNotFoundError, IsADirectoryError, PermissionError) as e:
        raise InvalidImageError(f"Cannot read image {path}: {e}") from e
    except (UnidentifiedImageError, OSError) as e:
        raise InvalidImageError(f"Cannot decode image {path}: {e}") from e

    height, width = pixels.shape[:2]
    if width < MIN_IMAGE_SIDE or height < MIN_IMAGE_SIDE:
        raise InvalidImageError(
            f"Image {path} is {width}x{height}; at least {MIN_IMAGE_SIDE}x{MIN_IMAGE_SIDE} is required"
        )
    logger.debug(f"Decoded {path} ({image_format}, {mode}, {width}x{height})")
    return RgbImage.from_array(pixels)


def to_planes(img: RgbImage) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return the planes in fixed R, G, B order."""
    return img.red, img.green, img.blue


def save_png(img: RgbImage, path: str | Path) -> Path:
    """Write an integer-valued RgbImage as an 8-bit RGB PNG."""
    path = Path(path)
    pixels = img.to_array()
    if not np.array_equal(pixels, np.rint(pixels)):
        raise InvalidImageError("Only integer-valued planes can be written losslessly as PNG")
    Image.fromarray(pixels.astype(np.uint8)).save(path, format="PNG")
    return path
