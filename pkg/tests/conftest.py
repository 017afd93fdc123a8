import pytest

from fibcat.corpus import (
    base_categories, corpus_bundles, corpus_squares, corpus_twocells,
    transition_bundles,
)


@pytest.fixture(scope="session")
def cats():
    return base_categories()


@pytest.fixture(scope="session")
def bundles():
    return corpus_bundles()


@pytest.fixture(scope="session")
def squares():
    return corpus_squares()


@pytest.fixture(scope="session")
def twocells():
    return corpus_twocells()


@pytest.fixture(scope="session")
def tbundles():
    return transition_bundles()
