from fractions import Fraction

import pytest

from padiczeta.padic import PadicContext


@pytest.fixture(scope="session")
def ctx5():
    return PadicContext(5, 16)


@pytest.fixture(scope="session")
def ctx3():
    return PadicContext(3, 16)


@pytest.fixture(scope="session")
def ctx7():
    return PadicContext(7, 16)


def random_unit_fraction(rng, p, max_den_exp=3):
    """A random nonzero rational with controlled p-valuation."""
    num = rng.randrange(1, p**6)
    while num % p == 0:
        num = rng.randrange(1, p**6)
    if rng.random() < 0.5:
        num = -num
    shift = rng.randrange(-max_den_exp, max_den_exp + 1)
    if shift >= 0:
        return Fraction(num * p**shift)
    return Fraction(num, p**-shift)
