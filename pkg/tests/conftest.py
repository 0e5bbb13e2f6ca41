import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("ci", deadline=None, max_examples=100)
settings.load_profile("ci")


@pytest.fixture
def rng():
    return np.random.default_rng(20260417)


def random_timelike(rng, n):
    """Future-pointing timelike wave vectors."""
    out = []
    while len(out) < n:
        k = rng.normal(size=4)
        k[0] = abs(k[0]) + np.linalg.norm(k[1:]) * rng.uniform(1.01, 3.0)
        out.append(k)
    return out


def random_null(rng, n):
    out = []
    for _ in range(n):
        v = rng.normal(size=3)
        out.append(np.concatenate([[np.linalg.norm(v)], v]))
    return out
