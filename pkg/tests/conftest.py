import pytest

from binomcensus.arith import factor
from binomcensus.fields import build_field

# Prime powers used across the suites.
PRIME_POWERS_49 = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49]
PRIME_POWERS_64 = PRIME_POWERS_49 + [53, 59, 61, 64]


@pytest.fixture(scope="session")
def field_for():
    """Session-wide cache of constructed fields, keyed by q."""
    cache = {}

    def get(q):
        if q not in cache:
            ((p, e),) = factor(q).factors
            cache[q] = build_field(p, e)
        return cache[q]

    return get
