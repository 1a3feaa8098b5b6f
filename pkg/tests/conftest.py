import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from entrobound.rng import CounterRNG

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture
def rng():
    return CounterRNG(20240611)


def simplex(values):
    """Normalise hypothesis-drawn positive weights into a probability vector."""
    a = np.asarray(values, dtype=float)
    return a / a.sum()
