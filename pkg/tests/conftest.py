"""Shared strategies and fixtures for the test suite."""

import numpy as np
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from parrondo_ring import Configuration, GameParams, mixture_ergodicity

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=50,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

probabilities = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


@st.composite
def game_params(draw, lo=0.0, hi=1.0):
    """Arbitrary coin parameters with all four probabilities in [lo, hi]."""
    ps = st.floats(min_value=lo, max_value=hi, allow_nan=False)
    return GameParams(draw(ps), draw(ps), draw(ps), draw(ps))


@st.composite
def configurations(draw, min_n=3, max_n=10):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    bits = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    return Configuration(n, tuple(bits))


def random_ergodic_point(rng: np.random.Generator, gamma=None):
    """Draw (gamma, params) until the basic-inequality condition holds."""
    while True:
        g = rng.uniform(0.05, 0.95) if gamma is None else gamma
        params = GameParams(*rng.random(4))
        if mixture_ergodicity(g, params).ergodic:
            return g, params
