import numpy as np
import pytest

from exterior.scalar import ScalarMode
from g2.structure import G2Structure


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def g2():
    return G2Structure.model()


@pytest.fixture
def g2_float():
    return G2Structure.model(ScalarMode.FLOAT)


@pytest.fixture(scope="session")
def search_hits():
    # the full {0, ±1} scan is the slowest thing in the suite; run it once
    from runner.suites import search_hits as cached

    return cached()


@pytest.fixture(scope="session")
def worked(search_hits):
    """(algebra, coassociative ideal labels) for the first non-abelian search hit."""
    from runner.suites import worked_example

    return worked_example()
