import random

import pytest

from .corpus import random_model


@pytest.fixture(scope="session")
def model_corpus():
    """500 seeded random pointed models (<= 8 worlds, 2 agents, 2 atoms)
    shared by the acceptance suite."""
    rng = random.Random(20260823)
    return [random_model(rng) for _ in range(500)]
