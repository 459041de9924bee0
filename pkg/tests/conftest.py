import sys
from pathlib import Path

import pytest
from hypothesis import settings

# Ensure project root is on sys.path so tests can import package
ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from supertropical.io import parse_input  # noqa: E402
from supertropical.matrix import SuperMatrix  # noqa: E402
from supertropical.semiring import parse_scalar  # noqa: E402

FIXTURES = Path(__file__).resolve().parent / "fixtures"

# matrix products and graph searches are too slow for the default per-example deadline
settings.register_profile("engine", deadline=None, max_examples=100)
settings.load_profile("engine")


def mat(rows):
    """Matrix from rows written in document syntax: "eps", numbers, [re, gh] pairs."""
    return SuperMatrix.from_rows([[parse_scalar(t) for t in row] for row in rows])


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def two_way_pair():
    return parse_input(FIXTURES / "two_way_pair.json")


@pytest.fixture
def triangularizable():
    return parse_input(FIXTURES / "triangularizable.json")


@pytest.fixture
def single_edge():
    return parse_input(FIXTURES / "single_edge.json")
