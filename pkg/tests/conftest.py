import os
import random
from fractions import Fraction as F

import pytest

# Keep test runs from writing log files; must be set before config is imported.
os.environ.setdefault("GDOF_APP_LOG_FILE", "")

from core.gdof import AntennaConfig, ExponentProfile  # noqa: E402


@pytest.fixture
def example1():
    """(3, 3, 2, 2) under [1, 3/5, 3/5, 1]."""
    return AntennaConfig(3, 3, 2, 2), ExponentProfile(1, F(3, 5), F(3, 5), 1)


@pytest.fixture
def example2():
    """(3, 3, 2, 2) under [1, 1/4, 5/4, 1]."""
    return AntennaConfig(3, 3, 2, 2), ExponentProfile(1, F(1, 4), F(5, 4), 1)


@pytest.fixture
def channel_draws():
    """Seeded random (cfg, exp) pairs: counts in [1, 4], exponents on the 1/4 grid up to 2."""
    def draw(count: int, seed: int, positive_a22: bool = False):
        rng = random.Random(seed)
        grid = [F(k, 4) for k in range(9)]
        pairs = []
        for _ in range(count):
            cfg = AntennaConfig(*(rng.randint(1, 4) for _ in range(4)))
            a22 = rng.choice(grid[1:] if positive_a22 else grid)
            pairs.append((cfg, ExponentProfile(1, rng.choice(grid), rng.choice(grid), a22)))
        return pairs
    return draw
