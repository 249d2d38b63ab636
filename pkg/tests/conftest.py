from fractions import Fraction

import pytest
from hypothesis import settings

from kantorovich import FinMetricSpace, Measure, tensor

# exact rational pivots are bursty; wall-clock deadlines only add flakiness
settings.register_profile("exact", deadline=None)
settings.load_profile("exact")


@pytest.fixture
def two_point():
    """{a, b} at distance 1."""
    return FinMetricSpace(("a", "b"), ((0, 1), (1, 0)))


@pytest.fixture
def bit_space():
    """{0, 1} at distance 1, labelled by digit strings."""
    return FinMetricSpace(("0", "1"), ((0, 1), (1, 0)))


@pytest.fixture
def correlated_pair(bit_space):
    """The perfectly correlated uniform joint on the bit pair."""
    pair = tensor(bit_space, bit_space)
    return Measure.from_mapping(
        pair, {("0", "0"): Fraction(1, 2), ("1", "1"): Fraction(1, 2)}
    )


@pytest.fixture
def three_point():
    return FinMetricSpace(
        ("p", "q", "r"),
        (
            (0, 1, 2),
            (1, 0, Fraction(3, 2)),
            (2, Fraction(3, 2), 0),
        ),
    )
