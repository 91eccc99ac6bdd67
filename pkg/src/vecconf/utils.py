import inspect
import json
import logging
import pathlib
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from string import Template
from typing import Callable, Iterable, Sequence, TypeVar

import numpy as np
import pandas as pd
from loguru import logger
from tqdm import tqdm

from vecconf.config import LogConfig, ParallelConfig

T = TypeVar("T")
R = TypeVar("R")


class TemplateUtils:

    def __init__(self, template_path: pathlib.Path):
        """
        Report template, a markdown file

        Args:
            template_path (pathlib.Path): Path to template file
        """
        self.template_path: pathlib.Path = template_path
        with open(self.template_path, "r", encoding="utf-8") as f:
            lines = f.readlines()
        self.title: str = lines[0].strip() if lines else ""
        self.body: str = "".join(lines[1:]).strip()

    def render(self, **kwargs) -> str:
        """
        Title line followed by the body with $placeholders substituted

        Args:
            **kwargs: Values of the template placeholders
        """
        return f"{self.title}\n{Template(self.body).substitute(**kwargs)}\n"


class InterceptHandler(logging.Handler):
    """Forward stdlib records (warnings from numpy, pandas, the process pool) to loguru."""

    def emit(self, record: logging.LogRecord) -> None:
        try:
            level: str | int = logger.level(record.levelname).name
        except ValueError:
            level = record.levelno

        # first frame outside the logging and warnings machinery
        frame, depth = inspect.currentframe(), 0
        while frame and (depth == 0 or frame.f_code.co_filename in (logging.__file__, warnings.__file__)):
            frame = frame.f_back
            depth += 1

        logger.opt(depth=depth, exception=record.exc_info).bind(origin=record.name).log(
            level, f"[{record.name}] {record.getMessage()}")


def set_log_level(level: str) -> None:
    logger.remove()
    logger.add(sink=sys.stderr, level=level.upper())


def intercept_std_logging(names: Iterable[str] = LogConfig.INTERCEPTED) -> None:
    """Route the named stdlib loggers, and Python warnings, through loguru."""
    logging.captureWarnings(True)
    for name in names:
        std = logging.getLogger(name)
        std.handlers = [InterceptHandler()]
        std.propagate = False


set_log_level(LogConfig.LEVEL)
intercept_std_logging()


def dumps_json(obj) -> str:
    """Byte-stable JSON: sorted keys, two-space indent."""
    return json.dumps(obj, sort_keys=True, indent=2)


def write_text(text: str, path: pathlib.Path | str | None = None) -> None:
    """Write to path, or to stdout when path is None."""
    if path is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text if text.endswith("\n") else text + "\n")
    logger.info(f"Wrote {path}")


def matrix_to_csv(matrix: np.ndarray, row_label: str = "s") -> str:
    """Header row holds the column index (t), the first column the row index."""
    df = pd.DataFrame(np.asarray(matrix, dtype=np.int64))
    df.index.name = row_label
    return df.to_csv()


def parallel_map(fn: Callable[[T], R],
                 items: Iterable[T],
                 max_workers: int | None = None,
                 desc: str = "Working") -> list[R]:
    """
    Map fn over items in a process pool, keeping input order

    Runs inline when at most one worker is configured or there is at most one item.

    Args:
        fn: picklable top-level function
        items: arguments, one call each
        max_workers (int | None): defaults to ParallelConfig.MAX_WORKERS
        desc (str): tqdm title
    """
    items: Sequence[T] = list(items)
    workers = ParallelConfig.MAX_WORKERS if max_workers is None else max_workers
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(tqdm(pool.map(fn, items), total=len(items), desc=desc, leave=False))
