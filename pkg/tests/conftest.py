import pytest

from groupoidal import ring_from_tag


@pytest.fixture(scope="session")
def Q():
    return ring_from_tag("Q")


@pytest.fixture(scope="session")
def Z():
    return ring_from_tag("Z")


@pytest.fixture(scope="session")
def Z5():
    return ring_from_tag("Z/5")
