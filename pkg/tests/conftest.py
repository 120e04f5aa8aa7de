import pytest

from sqshift import SquareValueCache, build_spf


@pytest.fixture(scope="session")
def spf_100k():
    return build_spf(10**5)


@pytest.fixture(scope="session")
def dsq_cache_10k():
    return SquareValueCache(10**4)
