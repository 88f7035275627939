import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from scattered_lab import brute_is_scattered, tower_for_q

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def brute_verdicts():
    """Oracle verdicts per norm representative, computed once per q and shared."""
    cache = {}

    def get(q):
        if q not in cache:
            ctx = tower_for_q(q)
            bs, _ = ctx.norm_fiber_table()
            cache[q] = [brute_is_scattered(bs[k]) for k in range(len(bs))]
        return cache[q]

    return get
