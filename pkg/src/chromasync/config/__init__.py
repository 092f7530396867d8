from .configs import GmmConfig, SvmConfig
from .settings import default_jobs, default_seed

__all__ = [
    "GmmConfig",
    "SvmConfig",
    "default_jobs",
    "default_seed",
]
