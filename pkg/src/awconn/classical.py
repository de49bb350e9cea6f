"""Jacobi and Gegenbauer polynomials over the rationals.

Polynomials in ``x`` reuse :class:`LaurentPoly` with nonnegative exponents.
Standard normalizations:

    P_n^{(al,be)}(x) = (al+1)_n / n! * 2F1(-n, n+al+be+1; al+1; (1-x)/2)
    C_n^{lam}(x)     = sum_k (-1)^k (lam)_{n-k} / (k! (n-2k)!) (2x)^{n-2k}
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Sequence

from .arith import RatLike, poch, to_rat
from .laurent import LaurentPoly

__all__ = [
    "ClassicalParams",
    "jacobi_poly",
    "gegenbauer_poly",
    "jacobi_connection",
    "gegenbauer_connection",
    "connection_oracle",
    "contract",
]


@dataclass(frozen=True)
class ClassicalParams:
    family: str  # "jacobi" or "gegenbauer"
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.family not in ("jacobi", "gegenbauer"):
            raise ValueError(f"unknown family {self.family!r}")
        object.__setattr__(self, "values", tuple(to_rat(v) for v in self.values))


_ONE_MINUS_X_HALF = LaurentPoly({0: Fraction(1, 2), 1: Fraction(-1, 2)})


def jacobi_poly(n: int, alpha: RatLike, beta: RatLike) -> LaurentPoly:
    """``P_n^{(alpha, beta)}`` as a polynomial in ``x``."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    al, be = to_rat(alpha), to_rat(beta)
    out = LaurentPoly.zero()
    power = LaurentPoly.const(1)
    for j in range(n + 1):
        # (al+1)_n / (al+1)_j = (al+j+1)_{n-j}: no division by (al+1)_j needed
        coef = poch(al + j + 1, n - j) * poch(n + al + be + 1, j) * poch(-n, j) / (factorial(n) * factorial(j))
        out = out + power.scale(coef)
        power = power * _ONE_MINUS_X_HALF
    return out


def gegenbauer_poly(n: int, lam: RatLike) -> LaurentPoly:
    """``C_n^{lam}`` as a polynomial in ``x``."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    lam = to_rat(lam)
    terms = {}
    for k in range(n // 2 + 1):
        m = n - 2 * k
        terms[m] = (-1) ** k * poch(lam, n - k) * 2**m / Fraction(factorial(k) * factorial(m))
    return LaurentPoly(terms)


def jacobi_connection(n: int, gamma: RatLike, alpha: RatLike, beta: RatLike) -> list[Fraction]:
    """``c_k`` with ``P_n^{(gamma,beta)} = sum_k c_k P_k^{(alpha,beta)}``."""
    ga, al, be = to_rat(gamma), to_rat(alpha), to_rat(beta)
    out = []
    for k in range(n + 1):
        den = poch(al + be + k + 1, n + 1) * factorial(n - k)
        if den == 0:
            raise ZeroDivisionError(f"vanishing denominator (alpha+beta+{k + 1})_{n + 1}")
        num = poch(be + k + 1, n - k) * poch(ga - al, n - k) * poch(be + ga + n + 1, k) * (2 * k + al + be + 1)
        out.append(num / den)
    return out


def gegenbauer_connection(n: int, lam: RatLike, nu: RatLike) -> list[Fraction]:
    """Coefficients indexed by target degree: ``C_n^lam = sum_j c_j C_j^nu``.

    Only ``j = n - 2k`` can be nonzero.
    """
    lam, nu = to_rat(lam), to_rat(nu)
    out = [Fraction(0)] * (n + 1)
    for k in range(n // 2 + 1):
        den = poch(nu, n - k + 1) * factorial(k)
        if den == 0:
            raise ZeroDivisionError(f"vanishing denominator (nu)_{n - k + 1}")
        out[n - 2 * k] = poch(lam - nu, k) * poch(lam, n - k) * (n - 2 * k + nu) / den
    return out


def connection_oracle(source: LaurentPoly, family: Callable[[int], LaurentPoly], n: int) -> list[Fraction]:
    """Expand ``source`` (degree ``<= n``) over ``family(0..n)`` by a
    triangular solve on the ordinary degree."""
    out = [Fraction(0)] * (n + 1)
    rest = source
    for j in range(n, -1, -1):
        basis = family(j)
        lead = basis[j]
        if lead == 0:
            raise ZeroDivisionError(f"target polynomial of degree {j} has vanishing leading coefficient")
        c = rest[j] / lead
        out[j] = c
        rest = rest - basis.scale(c)
    if not rest.is_zero():
        raise ArithmeticError("source has degree above n")
    return out


def contract(coeffs: Sequence[Fraction], family: Callable[[int], LaurentPoly]) -> LaurentPoly:
    out = LaurentPoly.zero()
    for j, c in enumerate(coeffs):
        if c:
            out = out + family(j).scale(c)
    return out
