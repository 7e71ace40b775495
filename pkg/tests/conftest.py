import pytest

from polycat import RankTable, enumerate_all


@pytest.fixture(scope="session")
def cats5():
    """k=2 catalogs for n = 0..5 (about a second to build)."""
    return enumerate_all(5, 2)


@pytest.fixture(scope="session")
def cats3(cats5):
    return cats5[:4]


@pytest.fixture
def two_lines():
    """Two lines placed freely in a plane."""
    return RankTable(2, 2, (0, 2, 2, 3))


@pytest.fixture
def three_lines():
    """Three lines placed freely in a plane."""
    return RankTable(3, 2, (0, 2, 2, 3, 2, 3, 3, 3))
