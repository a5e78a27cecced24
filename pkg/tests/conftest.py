import random
from fractions import Fraction as F

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from thermoproc import make_context

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile("default")

LOW = (1, F(1, 2), F(1, 4))
HIGH = (1, F(9, 10), F(8, 10))
AT = (1, F(1, 2), F(1, 2))


@pytest.fixture
def lo():
    return make_context(LOW)


@pytest.fixture
def hi():
    return make_context(HIGH)


@pytest.fixture
def at():
    return make_context(AT)


@pytest.fixture
def rng():
    return random.Random(12345)


@st.composite
def exact_weights(draw, d=None, dmin=2, dmax=4, denominator=24):
    """Non-increasing rational weights starting at 1."""
    if d is None:
        d = draw(st.integers(dmin, dmax))
    nums = draw(st.lists(st.integers(1, denominator), min_size=d - 1, max_size=d - 1))
    return (F(1), *sorted((F(n, denominator) for n in nums), reverse=True))


@st.composite
def exact_states(draw, d, denominator=40):
    raw = draw(st.lists(st.integers(0, denominator), min_size=d, max_size=d))
    if not any(raw):
        raw[0] = 1
    tot = sum(raw)
    return tuple(F(x, tot) for x in raw)
