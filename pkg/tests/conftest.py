"""Shared fixtures for the bin packing test suite."""

from pathlib import Path

import numpy as np
import pytest

from app.models.instance import Instance
from factories import make_instance


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    """Point every file the settings name into the test's tmp_path."""
    monkeypatch.setenv("BINPACK_LOG_DIR", str(tmp_path / "logs"))
    monkeypatch.setenv("BINPACK_CHECKPOINT_DIR", str(tmp_path / "checkpoints"))
    monkeypatch.setenv("BINPACK_RESULTS_LOG", str(tmp_path / "results.log"))
    return tmp_path


@pytest.fixture
def exact_fit() -> Instance:
    """One 5x5x5 box in one 5x5x5 container."""
    return make_instance([(5, 5, 5)], [(5, 5, 5)], name="exact_fit")


@pytest.fixture
def mixed_instance() -> Instance:
    """Three boxes {4x4x4, 4x4x4, 8x4x4} and containers {8x8x4, 4x4x4}."""
    return make_instance([(4, 4, 4), (4, 4, 4), (8, 4, 4)], [(8, 8, 4), (4, 4, 4)], name="mixed")


@pytest.fixture
def small_instance() -> Instance:
    """Six boxes over three heterogeneous containers; room for several packings."""
    return make_instance(
        [(3, 2, 2), (2, 2, 2), (4, 1, 2), (1, 1, 3), (2, 3, 1), (3, 3, 3)],
        [(4, 4, 3), (3, 3, 3), (5, 2, 2)],
        name="small",
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)
