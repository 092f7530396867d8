"""
Environment-driven defaults.

Values are read through python-decouple, so they may come from the process
environment or from a `.env` / `settings.ini` file next to the working directory.
"""

import psutil
from decouple import config as decouple_config


def default_seed() -> int:
    """Default seed for every randomized command (FORENSICS_SEED)."""
    return decouple_config("FORENSICS_SEED", default=0, cast=int)


def default_jobs() -> int:
    """Default extraction worker count (CHROMASYNC_JOBS, else logical CPUs)."""
    cpus = psutil.cpu_count(logical=True) or 1
    return max(1, decouple_config("CHROMASYNC_JOBS", default=cpus, cast=int))
