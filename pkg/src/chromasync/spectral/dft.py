"""
2-D discrete Fourier transforms of real pixel planes.

Planes are indexed [y, x] (rows are y) and spectra [v, u], so F[v, u] is the
coefficient of e^{-i 2 pi (u x / W + v y / H)} with zero-based x, y. The
one-based sums of the feature definition differ only by a phase factor, which
the magnitude spectrum discards.

`dft2_naive` is the direct double sum and serves as the oracle for
`dft2_fast`, which runs 1-D transforms over rows then columns: iterative
radix-2 for power-of-two lengths and Bluestein's chirp-z convolution otherwise.
No normalization, windowing or centering is applied.
"""

from functools import lru_cache

import numpy as np

from chromasync.core.utils import ensure_finite


def _as_plane(plane) -> np.ndarray:
    array = np.asarray(plane, dtype=np.float64)
    if array.ndim != 2 or array.shape[0] < 1 or array.shape[1] < 1:
        raise ValueError(f"Expected a non-empty 2-D plane, got shape {array.shape}")
    ensure_finite(array, "DFT input plane")
    return array


@lru_cache(maxsize=64)
def _dft_matrix(n: int) -> np.ndarray:
    k = np.arange(n)
    # reduce u*x mod n before scaling so the angle stays small and exact
    phase = np.outer(k, k) % n
    matrix = np.exp(-2j * np.pi * phase / n)
    matrix.setflags(write=False)
    return matrix


def dft2_naive(plane) -> np.ndarray:
    """Direct double-sum 2-D DFT: F[v, u] = sum_y sum_x p[y, x] e^{-i2pi(ux/W + vy/H)}."""
    p = _as_plane(plane)
    height, width = p.shape
    return _dft_matrix(height) @ p.astype(np.complex128) @ _dft_matrix(width)


def _is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


@lru_cache(maxsize=64)
def _bit_reversal(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    indices = np.arange(n)
    reversed_indices = np.zeros(n, dtype=np.int64)
    for _ in range(bits):
        reversed_indices = (reversed_indices << 1) | (indices & 1)
        indices = indices >> 1
    return reversed_indices


@lru_cache(maxsize=64)
def _twiddles(m: int) -> np.ndarray:
    return np.exp(-2j * np.pi * np.arange(m // 2) / m)


def _fft_radix2(x: np.ndarray) -> np.ndarray:
    """Iterative decimation-in-time FFT along the last axis (length 2^k)."""
    n = x.shape[-1]
    if n == 1:
        return x.copy()
    batch = x.shape[:-1]
    out = x[..., _bit_reversal(n)]
    m = 2
    while m <= n:
        # blocks of size m hold two consecutive transforms of size m/2
        blocks = out.reshape(batch + (n // m, m))
        even = blocks[..., : m // 2]
        odd = blocks[..., m // 2 :] * _twiddles(m)
        out = np.concatenate([even + odd, even - odd], axis=-1).reshape(batch + (n,))
        m *= 2
    return out


@lru_cache(maxsize=64)
def _bluestein_plan(n: int) -> tuple[np.ndarray, np.ndarray, int]:
    k = np.arange(n)
    # n^2 mod 2n keeps the chirp angle accurate for large n
    chirp = np.exp(-1j * np.pi * ((k * k) % (2 * n)) / n)
    size = 1 << (2 * n - 1).bit_length()
    kernel = np.zeros(size, dtype=np.complex128)
    kernel[:n] = np.conj(chirp)
    kernel[size - n + 1 :] = np.conj(chirp[1:])[::-1]
    kernel_spectrum = _fft_radix2(kernel)
    chirp.setflags(write=False)
    kernel_spectrum.setflags(write=False)
    return chirp, kernel_spectrum, size


def _fft_bluestein(x: np.ndarray) -> np.ndarray:
    """Arbitrary-length FFT along the last axis via a power-of-two convolution."""
    n = x.shape[-1]
    chirp, kernel_spectrum, size = _bluestein_plan(n)
    padded = np.zeros(x.shape[:-1] + (size,), dtype=np.complex128)
    padded[..., :n] = x * chirp
    product = _fft_radix2(padded) * kernel_spectrum
    # inverse transform through conjugation: ifft(z) = conj(fft(conj(z))) / size
    convolution = np.conj(_fft_radix2(np.conj(product))) / size
    return convolution[..., :n] * chirp


def fft1d(x: np.ndarray) -> np.ndarray:
    """1-D DFT of every vector along the last axis."""
    x = np.asarray(x, dtype=np.complex128)
    n = x.shape[-1]
    if _is_power_of_two(n):
        return _fft_radix2(x)
    return _fft_bluestein(x)


def dft2_fast(plane) -> np.ndarray:
    """Row-column 2-D DFT, equal to `dft2_naive` up to rounding."""
    p = _as_plane(plane)
    rows = fft1d(p)
    return fft1d(rows.T).T
