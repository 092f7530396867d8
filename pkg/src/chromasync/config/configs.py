"""
Run configurations for the classifiers.

Both configs follow the same pattern: plain dataclasses with defaults, built
from dictionaries (persisted provenance blocks, CLI flags) via `from_dict`.
"""

from dataclasses import asdict, dataclass
from typing import Any, Union


@dataclass(frozen=True)
class GmmConfig:
    """Configuration for two-component EM fitting."""

    max_iters: int = 500
    tol: float = 1e-8
    seed: int = 0
    n_restarts: int = 0
    variance_floor: float = 1e-9

    def __post_init__(self) -> None:
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.n_restarts < 0:
            raise ValueError("n_restarts must be non-negative")
        if self.variance_floor <= 0:
            raise ValueError("variance_floor must be positive")

    @classmethod
    def from_dict(cls, config: dict | None) -> "GmmConfig":
        """Create config from dictionary."""
        if not config:
            return cls()

        return cls(
            max_iters=int(config.get("max_iters", 500)),
            tol=float(config.get("tol", 1e-8)),
            seed=int(config.get("seed", 0)),
            n_restarts=int(config.get("n_restarts", 0)),
            variance_floor=float(config.get("variance_floor", 1e-9)),
        )

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class SvmConfig:
    """Configuration for SMO training of the RBF support vector machine."""

    c: float = 1.0
    gamma: Union[str, float] = "scale"
    tol: float = 1e-3
    max_passes: int = 200

    def __post_init__(self) -> None:
        if self.c <= 0:
            raise ValueError(f"c must be positive, got {self.c}")
        if isinstance(self.gamma, str):
            if self.gamma != "scale":
                raise ValueError(f"gamma must be 'scale' or a positive number, got '{self.gamma}'")
        elif self.gamma <= 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_passes < 1:
            raise ValueError("max_passes must be at least 1")

    @staticmethod
    def parse_gamma(value: Union[str, float]) -> Union[str, float]:
        """Accept 'scale' or anything float() understands (CLI strings included)."""
        if isinstance(value, str) and value.strip().lower() == "scale":
            return "scale"
        return float(value)

    @classmethod
    def from_dict(cls, config: dict | None) -> "SvmConfig":
        """Create config from dictionary."""
        if not config:
            return cls()

        return cls(
            c=float(config.get("c", 1.0)),
            gamma=cls.parse_gamma(config.get("gamma", "scale")),
            tol=float(config.get("tol", 1e-3)),
            max_passes=int(config.get("max_passes", 200)),
        )

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)
