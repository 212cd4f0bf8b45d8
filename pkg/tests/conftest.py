import pytest

import support


@pytest.fixture(scope="session")
def sigma257():
    return support.sigma257()


@pytest.fixture(scope="session")
def two_nodes():
    return support.two_nodes()


@pytest.fixture(scope="session")
def three_nodes():
    return support.three_nodes()


@pytest.fixture(scope="session")
def corpus30():
    return support.corpus()
