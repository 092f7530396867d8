from .dft import dft2_fast, dft2_naive, fft1d
from .spectrum import dump_spectrum_csv, magnitude, read_plane_csv, spectrum

__all__ = [
    "dft2_fast",
    "dft2_naive",
    "dump_spectrum_csv",
    "fft1d",
    "magnitude",
    "read_plane_csv",
    "spectrum",
]
