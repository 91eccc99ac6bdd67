import pathlib

import pytest

from vecconf.arrangement.vectors import load_config, new_config
from vecconf.config import ParallelConfig, PathConfig


@pytest.fixture(autouse=True)
def single_worker(monkeypatch):
    monkeypatch.setattr(ParallelConfig, "MAX_WORKERS", 1)


@pytest.fixture
def examples_dir() -> pathlib.Path:
    return PathConfig.EXAMPLES_DIR


@pytest.fixture
def three_vectors():
    """(1,0), (0,1), (1,1) in the plane"""
    return new_config(2, 3, [[1, 0], [0, 1], [1, 1]])


@pytest.fixture
def cyclic5_3(examples_dir):
    return load_config(examples_dir / "cyclic5_3.json")


@pytest.fixture
def cocyclic5_3(examples_dir):
    return load_config(examples_dir / "cocyclic5_3.json")
