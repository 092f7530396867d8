import numpy as np
import pytest
from PIL import Image

from chromasync.core.exceptions import DimensionMismatchError, InvalidImageError, NonFiniteInputError
from chromasync.core.types import RgbImage
from chromasync.imaging.imageio import load_image, save_png, to_planes
from chromasync.imaging.synthgen import SynthConfig, generate_image


def _write(tmp_path, name, pixels, mode=None, fmt="PNG"):
    path = tmp_path / name
    image = Image.fromarray(np.asarray(pixels, dtype=np.uint8))
    if mode:
        image = image.convert(mode)
    image.save(path, format=fmt)
    return path


class TestRgbImage:
    def test_planes_are_read_only_floats(self):
        img = RgbImage(np.zeros((2, 3)), np.ones((2, 3)), np.full((2, 3), 2.0))
        assert img.width == 3 and img.height == 2
        assert img.red.dtype == np.float64
        with pytest.raises(ValueError):
            img.red[0, 0] = 5.0

    def test_mismatched_planes(self):
        with pytest.raises(DimensionMismatchError):
            RgbImage(np.zeros((2, 2)), np.zeros((2, 3)), np.zeros((2, 2)))

    def test_too_small(self):
        with pytest.raises(InvalidImageError, match="at least 2x2"):
            RgbImage(np.zeros((1, 4)), np.zeros((1, 4)), np.zeros((1, 4)))

    def test_out_of_range_and_non_finite(self):
        with pytest.raises(InvalidImageError, match="outside"):
            RgbImage(np.full((2, 2), 256.0), np.zeros((2, 2)), np.zeros((2, 2)))
        bad = np.zeros((2, 2))
        bad[0, 1] = np.nan
        with pytest.raises(NonFiniteInputError):
            RgbImage(np.zeros((2, 2)), bad, np.zeros((2, 2)))

    def test_array_round_trip(self, rng):
        pixels = rng.integers(0, 256, size=(4, 5, 3)).astype(np.float64)
        img = RgbImage.from_array(pixels)
        np.testing.assert_array_equal(img.to_array(), pixels)
        assert img == RgbImage.from_array(pixels.copy())


class TestLoadImage:
    def test_constant_color_png(self, tmp_path):
        pixels = np.zeros((2, 2, 3))
        pixels[...] = (10, 20, 30)
        img = load_image(_write(tmp_path, "c.png", pixels))
        assert np.all(img.red == 10)
        assert np.all(img.green == 20)
        assert np.all(img.blue == 30)

    def test_grayscale_replicated(self, tmp_path):
        path = _write(tmp_path, "g.png", np.full((2, 2), 7))
        img = load_image(path)
        for plane in to_planes(img):
            np.testing.assert_array_equal(plane, np.full((2, 2), 7.0))

    def test_alpha_is_discarded(self, tmp_path):
        rgba = np.zeros((3, 3, 4), dtype=np.uint8)
        rgba[..., 0] = 50
        rgba[..., 3] = 10
        path = tmp_path / "a.png"
        Image.fromarray(rgba).save(path)
        img = load_image(path)
        assert np.all(img.red == 50)
        assert np.all(img.blue == 0)

    def test_jpeg_is_accepted(self, tmp_path):
        path = _write(tmp_path, "x.jpg", np.full((8, 8, 3), 128), fmt="JPEG")
        img = load_image(path)
        assert (img.width, img.height) == (8, 8)

    def test_channel_order_follows_file(self, tmp_path, rng):
        pixels = rng.integers(0, 256, size=(6, 6, 3))
        original = load_image(_write(tmp_path, "o.png", pixels))
        swapped = load_image(_write(tmp_path, "s.png", pixels[..., [2, 0, 1]]))
        np.testing.assert_array_equal(swapped.red, original.blue)
        np.testing.assert_array_equal(swapped.green, original.red)
        np.testing.assert_array_equal(swapped.blue, original.green)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InvalidImageError, match="Cannot read"):
            load_image(tmp_path / "nope.png")

    def test_not_an_image(self, tmp_path):
        path = tmp_path / "junk.png"
        path.write_bytes(b"definitely not a png")
        with pytest.raises(InvalidImageError, match="Cannot decode"):
            load_image(path)

    def test_unsupported_format(self, tmp_path):
        path = _write(tmp_path, "x.bmp", np.zeros((4, 4, 3)), fmt="BMP")
        with pytest.raises(InvalidImageError, match="Unsupported image format"):
            load_image(path)

    def test_too_small_file(self, tmp_path):
        path = _write(tmp_path, "thin.png", np.zeros((1, 5, 3)))
        with pytest.raises(InvalidImageError, match="at least 2x2"):
            load_image(path)


class TestPngRoundTrip:
    def test_synthetic_image_is_lossless(self, tmp_path):
        cfg = SynthConfig(count=1, size=64, seed=3)
        for label in (0, 1):
            img = generate_image(cfg, label, 0)
            reloaded = load_image(save_png(img, tmp_path / f"{label}.png"))
            assert reloaded == img

    def test_non_integer_planes_rejected(self, tmp_path):
        img = RgbImage(np.full((2, 2), 0.5), np.zeros((2, 2)), np.zeros((2, 2)))
        with pytest.raises(InvalidImageError, match="integer-valued"):
            save_png(img, tmp_path / "frac.png")

    def test_duplicated_channel_stays_equal(self, tmp_path, rng):
        plane = rng.integers(0, 256, size=(5, 5))
        pixels = np.stack([plane, plane, rng.integers(0, 256, size=(5, 5))], axis=-1)
        red, green, _ = to_planes(load_image(_write(tmp_path, "d.png", pixels)))
        np.testing.assert_array_equal(red, green)
