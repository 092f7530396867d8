"""
Exception hierarchy shared by the library and the CLI.

The CLI maps every ChromaSyncError to exit code 2 (data/contract error).
"""


class ChromaSyncError(Exception):
    """Base class for every data or contract error raised by chromasync."""


class InvalidImageError(ChromaSyncError, ValueError):
    """Image file is unreadable, of an unsupported format, or too small."""


class DimensionMismatchError(ChromaSyncError, ValueError):
    pass


class NonFiniteInputError(ChromaSyncError, ValueError):
    pass


class EmptyInputError(ChromaSyncError, ValueError):
    pass


class DegenerateFitError(ChromaSyncError, ValueError):
    """Mixture fit collapsed (constant data or indistinguishable components)."""


class DegenerateExpectationError(ChromaSyncError, ValueError):
    def __init__(self, feature: str, m0: float, m1: float):
        self.feature = feature
        self.m0 = m0
        self.m1 = m1
        super().__init__(
            f"Degenerate expectation pair for feature '{feature}': "
            f"m0={m0!r}, m1={m1!r} (need m1 - m0 >= 1e-9)"
        )


class SingleClassError(ChromaSyncError, ValueError):
    def __init__(self, missing: str):
        self.missing = missing
        super().__init__(f"Training data has no '{missing}' samples; both classes are required")


class ManifestError(ChromaSyncError, ValueError):
    pass


class ModelFormatError(ChromaSyncError, ValueError):
    pass
