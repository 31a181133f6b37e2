"""Shared fixtures and the --runslow option."""

import pytest

from src.finite_field import field_new
from src.incidence import build_incidence


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def gf2():
    return field_new(2)


@pytest.fixture
def gf3():
    return field_new(3)


@pytest.fixture
def gf4():
    return field_new(2, 2)


@pytest.fixture
def example_A_rows():
    """Incidence matrix of V(3, 2) under the canonical point order."""
    return [
        [0, 1, 0, 1, 0, 1, 0],
        [1, 0, 0, 1, 1, 0, 0],
        [0, 0, 1, 1, 0, 0, 1],
        [1, 1, 1, 0, 0, 0, 0],
        [0, 1, 0, 0, 1, 0, 1],
        [1, 0, 0, 0, 0, 1, 1],
        [0, 0, 1, 0, 1, 1, 0],
    ]


@pytest.fixture
def pair_3_2(gf2):
    return build_incidence(3, gf2)
