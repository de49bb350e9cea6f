import random
from fractions import Fraction

import pytest

from awconn.arith import NonGenericError, ParamSet, genericity_failure
from awconn.connection import ShiftKind, ShiftSpec, shift_failure

# The worked-example tuple and a second, less regular one.
BASE = ParamSet.of(2, 3, 5, 7, "1/2")
ODD = ParamSet.of("3/7", "11/5", "2/9", "13/4", "5/3")


def random_rat(rng):
    return Fraction(rng.randint(1, 97), rng.randint(1, 97))


def generic_params(rng, depth, extra=None):
    while True:
        try:
            p = ParamSet(*(random_rat(rng) for _ in range(5)))
        except NonGenericError:
            continue
        if genericity_failure(p, depth) is None and (extra is None or extra(p) is None):
            return p


def generic_shift(rng, kind, depth):
    while True:
        p = generic_params(rng, depth)
        spec = ShiftSpec(ShiftKind(kind), p, random_rat(rng))
        if shift_failure(spec, depth) is None:
            return spec


@pytest.fixture
def base():
    return BASE


@pytest.fixture
def odd():
    return ODD


@pytest.fixture
def rng():
    return random.Random(20261016)
