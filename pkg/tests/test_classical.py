import random
from fractions import Fraction
from math import comb, factorial

import pytest

from awconn.arith import poch
from awconn.classical import (
    ClassicalParams,
    connection_oracle,
    contract,
    gegenbauer_connection,
    gegenbauer_poly,
    jacobi_connection,
    jacobi_poly,
)
from awconn.laurent import LaurentPoly


def rand_rat(rng):
    return Fraction(rng.randint(1, 97), rng.randint(1, 97))


def test_small_polys():
    al, be, lam = Fraction(1, 3), Fraction(2, 5), Fraction(7, 4)
    assert jacobi_poly(0, al, be) == LaurentPoly.const(1)
    assert jacobi_poly(1, al, be) == LaurentPoly({1: (al + be + 2) / 2, 0: (al - be) / 2})
    assert gegenbauer_poly(1, lam) == LaurentPoly({1: 2 * lam})
    # C_2^1 is the Chebyshev U_2 = 4x^2 - 1
    assert gegenbauer_poly(2, 1) == LaurentPoly({2: 4, 0: -1})
    # P_2^(0,0) is the Legendre polynomial (3x^2 - 1)/2
    assert jacobi_poly(2, 0, 0) == LaurentPoly({2: Fraction(3, 2), 0: Fraction(-1, 2)})


def test_gegenbauer_generating_function():
    # (1 - 2xt + t^2)^(-lam) = sum C_n t^n; check the t^3 coefficient via the binomial series
    lam = Fraction(5, 3)
    x = Fraction(2, 7)
    total = Fraction(0)
    n = 3
    # (1 - u)^(-lam) with u = 2xt - t^2: coefficient of t^3
    for j in range(n + 1):
        coef_u = poch(lam, j) / factorial(j)
        for i in range(j + 1):  # u^j = sum C(j,i) (2xt)^(j-i) (-t^2)^i
            if (j - i) + 2 * i == n:
                total += coef_u * comb(j, i) * (2 * x) ** (j - i) * (-1) ** i
    assert gegenbauer_poly(3, lam).evaluate(x) == total


def test_jacobi_matches_oracle():
    rng = random.Random(14)
    for _ in range(5):
        ga, al, be = rand_rat(rng), rand_rat(rng), rand_rat(rng)
        for n in range(11):
            closed = jacobi_connection(n, ga, al, be)
            assert closed == connection_oracle(jacobi_poly(n, ga, be), lambda k: jacobi_poly(k, al, be), n)
            assert contract(closed, lambda k: jacobi_poly(k, al, be)) == jacobi_poly(n, ga, be)


def test_gegenbauer_matches_oracle():
    rng = random.Random(15)
    for _ in range(5):
        lam, nu = rand_rat(rng), rand_rat(rng)
        for n in range(11):
            closed = gegenbauer_connection(n, lam, nu)
            assert closed == connection_oracle(gegenbauer_poly(n, lam), lambda k: gegenbauer_poly(k, nu), n)
            assert all(c == 0 for j, c in enumerate(closed) if (n - j) % 2)


def test_degenerate_identity():
    for n in range(8):
        unit = [0] * n + [1]
        assert jacobi_connection(n, Fraction(3, 7), Fraction(3, 7), Fraction(5, 2)) == unit
        assert gegenbauer_connection(n, Fraction(9, 4), Fraction(9, 4)) == unit


def test_vanishing_denominator():
    with pytest.raises(ZeroDivisionError):
        jacobi_connection(2, 1, Fraction(-1, 2), Fraction(-1, 2))
    with pytest.raises(ZeroDivisionError):
        gegenbauer_connection(2, 1, 0)


def test_params_record():
    cp = ClassicalParams("jacobi", (1, "2/3"))
    assert cp.values == (Fraction(1), Fraction(2, 3))
    with pytest.raises(ValueError):
        ClassicalParams("hermite", (1,))
