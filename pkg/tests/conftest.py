import random

import pytest

SEED = 20260816


@pytest.fixture
def rng() -> random.Random:
    return random.Random(SEED)
