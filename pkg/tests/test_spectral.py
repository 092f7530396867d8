import time

import numpy as np
import pytest

from chromasync.core.exceptions import NonFiniteInputError
from chromasync.core.types import RgbImage
from chromasync.spectral.dft import dft2_fast, dft2_naive, fft1d
from chromasync.spectral.spectrum import dump_spectrum_csv, magnitude, read_plane_csv, spectrum


def _relative_error(actual: np.ndarray, expected: np.ndarray) -> float:
    scale = np.linalg.norm(expected)
    return float(np.linalg.norm(actual - expected) / (scale if scale > 0 else 1.0))


class TestDftNaive:
    def test_constant_plane_is_dc_only(self):
        transform = dft2_naive(np.full((4, 4), 3.0))
        assert transform[0, 0] == pytest.approx(48.0)
        off_dc = np.abs(transform).ravel()[1:]
        assert np.all(off_dc < 1e-9)

    def test_two_by_two_by_hand(self):
        plane = np.array([[1.0, 2.0], [3.0, 4.0]])
        expected = np.array([[10.0, -2.0], [-4.0, 0.0]])
        np.testing.assert_allclose(dft2_naive(plane), expected, atol=1e-12)

    def test_layout_matches_numpy(self, rng):
        plane = rng.normal(size=(5, 7))
        np.testing.assert_allclose(dft2_naive(plane), np.fft.fft2(plane), atol=1e-9)

    @pytest.mark.parametrize("bad", [np.zeros(4), np.zeros((0, 3)), np.zeros((2, 2, 2))])
    def test_rejects_non_planes(self, bad):
        with pytest.raises(ValueError):
            dft2_naive(bad)

    def test_rejects_non_finite(self):
        plane = np.zeros((2, 2))
        plane[1, 1] = np.inf
        with pytest.raises(NonFiniteInputError):
            dft2_fast(plane)


class TestDftFast:
    @pytest.mark.parametrize("shape", [(2, 2), (3, 3), (8, 8), (16, 16), (17, 32)])
    def test_matches_naive(self, shape, rng):
        start = time.perf_counter()
        for _ in range(50):
            plane = rng.uniform(0, 255, size=shape)
            assert _relative_error(dft2_fast(plane), dft2_naive(plane)) < 1e-9
        assert time.perf_counter() - start < 10.0

    @pytest.mark.parametrize("n", [1, 2, 5, 12, 64, 100, 127])
    def test_fft1d_lengths(self, n, rng):
        x = rng.normal(size=(3, n)) + 1j * rng.normal(size=(3, n))
        np.testing.assert_allclose(fft1d(x), np.fft.fft(x, axis=-1), rtol=1e-9, atol=1e-9)

    def test_non_square_plane(self, rng):
        plane = rng.uniform(0, 255, size=(24, 10))
        assert _relative_error(dft2_fast(plane), np.fft.fft2(plane)) < 1e-9

    def test_linearity(self, rng):
        a = rng.normal(size=(6, 9))
        b = rng.normal(size=(6, 9))
        combined = dft2_fast(2.0 * a - 3.0 * b)
        assert _relative_error(combined, 2.0 * dft2_fast(a) - 3.0 * dft2_fast(b)) < 1e-12


class TestSpectralInvariants:
    def test_parseval_and_conjugate_symmetry(self, rng):
        for _ in range(100):
            h, w = rng.integers(2, 20, size=2)
            plane = rng.uniform(0, 255, size=(h, w))
            transform = dft2_fast(plane)
            energy = float(np.sum(plane**2))
            assert float(np.sum(np.abs(transform) ** 2)) / (h * w) == pytest.approx(energy, rel=1e-6)
            mirrored = np.conj(transform[(-np.arange(h)) % h][:, (-np.arange(w)) % w])
            assert _relative_error(mirrored, transform) < 1e-6

    def test_magnitude_is_shift_invariant(self, rng):
        plane = rng.uniform(0, 255, size=(8, 12))
        shifted = np.roll(plane, (3, 5), axis=(0, 1))
        np.testing.assert_allclose(magnitude(shifted), magnitude(plane), rtol=1e-9, atol=1e-9)


class TestSpectrum:
    def test_constant_image(self):
        img = RgbImage(np.full((4, 4), 10.0), np.full((4, 4), 20.0), np.full((4, 4), 30.0))
        spectra = spectrum(img)
        assert spectra.spec_r[0, 0] == pytest.approx(160.0)
        assert spectra.spec_g[0, 0] == pytest.approx(320.0)
        assert spectra.spec_b[0, 0] == pytest.approx(480.0)
        assert spectra.spec_r.sum() == pytest.approx(160.0)

    def test_dump_round_trip(self, tmp_path, rng):
        img = RgbImage.from_array(rng.integers(0, 256, size=(5, 6, 3)).astype(float))
        spectra = spectrum(img)
        written = dump_spectrum_csv(spectra, tmp_path / "dump")
        assert [p.name for p in written] == ["spec_r.csv", "spec_g.csv", "spec_b.csv"]
        for path, plane in zip(written, (spectra.spec_r, spectra.spec_g, spectra.spec_b)):
            reloaded = read_plane_csv(path)
            assert reloaded.shape == (5, 6)
            np.testing.assert_array_equal(reloaded, plane)
