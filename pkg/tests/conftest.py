import random
from fractions import Fraction

import pytest

from prodideals.rings import (
    IntegerRing,
    LocalizedIntegersRing,
    PolynomialRing,
    ResidueRing,
)


@pytest.fixture
def ZZ():
    return IntegerRing()


@pytest.fixture
def R12():
    return ResidueRing(12)


@pytest.fixture
def L25():
    return LocalizedIntegersRing((2, 5))


@pytest.fixture
def F2X():
    return PolynomialRing(2)


def rng_for(name: str) -> random.Random:
    return random.Random(f"prodideals:{name}")


def random_element(ring, rng, small=False):
    hi = 60 if small else 10**6
    if isinstance(ring, IntegerRing):
        return ring.element(rng.randint(-hi, hi))
    if isinstance(ring, ResidueRing):
        return ring.element(rng.randrange(ring.modulus))
    if isinstance(ring, LocalizedIntegersRing):
        num = rng.randint(-9999, 9999)
        den = rng.choice([1, 1, 1, 3, 7, 9, 11, 13, 21])
        while any(den % p == 0 for p in ring.primes):
            den += 2
        return ring.element(Fraction(num, den))
    if isinstance(ring, PolynomialRing):
        degree = rng.randint(0, 5)
        coeffs = [rng.randrange(ring.q) for _ in range(degree + 1)]
        return ring.element(tuple(coeffs))
    raise TypeError(ring)


def random_nonzero(ring, rng, small=False):
    while True:
        e = random_element(ring, rng, small)
        if not e.is_zero:
            return e
