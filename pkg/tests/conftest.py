import pytest

from groupgraphs.catalog import default_catalog


@pytest.fixture(scope="session")
def catalog64():
    return default_catalog(64)


@pytest.fixture(scope="session")
def catalog48(catalog64):
    return [g for g in catalog64 if g.n <= 48]


@pytest.fixture(scope="session")
def catalog32(catalog64):
    return [g for g in catalog64 if g.n <= 32]


@pytest.fixture(scope="session")
def catalog24(catalog64):
    return [g for g in catalog64 if g.n <= 24]
