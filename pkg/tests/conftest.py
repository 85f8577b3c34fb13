import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cstarpow.algebra import make_algebra


@pytest.fixture(scope="session")
def m2():
    return make_algebra([2])


@pytest.fixture(scope="session")
def m23():
    return make_algebra([2, 3])


@pytest.fixture(scope="session")
def c2():
    return make_algebra([1, 1])


@pytest.fixture(scope="session")
def c3():
    return make_algebra([1, 1, 1])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
