import random

import pytest

from gkmchar import standard_fixtures


@pytest.fixture(scope="session")
def fixtures():
    return standard_fixtures()


@pytest.fixture
def rng():
    return random.Random(20240817)
