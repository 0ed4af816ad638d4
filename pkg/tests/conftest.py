"""Test configuration and fixtures."""

import random
from pathlib import Path

import pytest
from click.testing import CliRunner

from src.algebra.models import generate_model
from src.algebra.reductive import Decomposition
from src.utils.config import ToolkitSettings

REPO_ROOT = Path(__file__).resolve().parent.parent
MODELS_DIR = REPO_ROOT / "data" / "models"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"


@pytest.fixture
def so3():
    return generate_model("so3")


@pytest.fixture
def sl2():
    return generate_model("sl2")


@pytest.fixture
def heis3():
    return generate_model("heis3")


@pytest.fixture
def so3_so2(so3):
    """so(3) over the rotations about e3: h = <e3>, m = <e1, e2>."""
    return so3, Decomposition.from_h(3, [2])


@pytest.fixture
def so3_group(so3):
    return so3, Decomposition.from_h(3)


@pytest.fixture
def sl2_h(sl2):
    """sl(2) over its Cartan: h = <h>, m = <e, f>."""
    return sl2, Decomposition.from_h(3, [0])


@pytest.fixture
def so3xr_so2():
    return generate_model("so3xR"), Decomposition.from_h(4, [2])


@pytest.fixture
def rng():
    """Seeded generator for randomized property checks."""
    return random.Random(ToolkitSettings.random_seed)


@pytest.fixture
def runner():
    return CliRunner(mix_stderr=False)


@pytest.fixture
def model_path():
    def _path(name: str) -> str:
        return str(MODELS_DIR / f"{name}.json")

    return _path
