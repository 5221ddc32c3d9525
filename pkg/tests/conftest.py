import random

import pytest

SEED = 20240801


@pytest.fixture
def rng():
    return random.Random(SEED)


def fresh_rng(offset: int = 0) -> random.Random:
    return random.Random(SEED + offset)
