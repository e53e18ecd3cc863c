from pathlib import Path

import pytest

from roughrank.rough import DecisionTable

REPO_ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = REPO_ROOT / "data" / "synthetic"


@pytest.fixture
def example1() -> DecisionTable:
    """Six-object, three-attribute information system used as the golden case."""
    return DecisionTable.from_rows(
        object_ids=["x1", "x2", "x3", "x4", "x5", "x6"],
        attributes=["a1", "a2", "a3"],
        rows=[
            (0, 1, 1),
            (0, 1, 0),
            (0, 0, 0),
            (1, 1, 1),
            (0, 1, 0),
            (0, 2, 1),
        ],
    )


@pytest.fixture
def example1_target() -> frozenset[int]:
    # {x2, x5} as zero-based indices
    return frozenset({1, 4})


@pytest.fixture
def synthetic_data_dir() -> Path:
    if not DATA_DIR.exists():
        pytest.skip("bundled synthetic corpus not present")
    return DATA_DIR


@pytest.fixture(scope="module")
def synthetic_data_dir_module() -> Path:
    if not DATA_DIR.exists():
        pytest.skip("bundled synthetic corpus not present")
    return DATA_DIR
