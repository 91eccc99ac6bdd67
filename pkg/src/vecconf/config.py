import os
import pathlib
from fractions import Fraction

import numpy as np
from dotenv import load_dotenv

load_dotenv(override=True)


class PathConfig:
    BASE_DIR: pathlib.Path = pathlib.Path(__file__).parent.resolve()
    DATA_DIR: pathlib.Path = BASE_DIR / "data"
    EXAMPLES_DIR: pathlib.Path = DATA_DIR / "examples"
    TEMPLATE_DIR: pathlib.Path = BASE_DIR / "templates"


class LogConfig:
    LEVEL: str = os.getenv("VECCONF_LOG_LEVEL", "INFO")
    # stdlib loggers forwarded to loguru; "py.warnings" carries warnings.warn
    INTERCEPTED: tuple[str, ...] = ("py.warnings", "numpy", "pandas", "concurrent.futures")


class SamplingConfig:
    SEED: int = int(os.getenv("VECCONF_SEED", "42"))
    RESAMPLE_BUDGET: int = 1000
    # pointed samples: integer points in [-B, B]^d with B = POINT_BOX_FACTOR * n
    POINT_BOX_FACTOR: int = 100
    # general samples: numerators in [-RATIONAL_BOX * n, RATIONAL_BOX * n], denominators 1..MAX_DENOMINATOR
    RATIONAL_BOX: int = 10
    MAX_DENOMINATOR: int = 4
    # span analysis: random samples drawn beyond the deterministic anchors and seeds
    SPAN_EXTRA_SAMPLES: int = 4

    @classmethod
    def rng(cls, seed: int | None = None) -> np.random.Generator:
        return np.random.default_rng(cls.SEED if seed is None else seed)


class EnumConfig:
    FARKAS_MAX_N: int = 9


class MotionConfig:
    PERTURB_MAGNITUDE: Fraction = Fraction(1, 10**6)
    PERTURB_RETRIES: int = 10
    # initial cluster radius of the mutation-rich path, relative to the stationary simplex
    EPSILON: Fraction = Fraction(1, 50)
    EPSILON_RETRIES: int = 12


class ParallelConfig:
    MAX_WORKERS: int = int(os.getenv("VECCONF_MAX_WORKERS", str((os.cpu_count() or 0) // 2)))
