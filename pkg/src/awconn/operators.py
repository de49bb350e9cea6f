"""Tilde-normalized Noumi operators acting on Laurent polynomials.

Every operator is a pure function of ``(tag, f, params)``.  Divisions by
``z^2 - 1`` and ``z^2 - q`` are carried out exactly on the antisymmetric
parts, so nothing ever leaves the Laurent polynomial ring.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction

from .arith import ParamSet
from .laurent import PLAIN, QFLAVOR, LaurentPoly, zz_position, zz_degree, basis_element

__all__ = [
    "OperatorTag",
    "involution_s1",
    "involution_s0",
    "skew_reduced",
    "apply",
    "check_quadratic",
    "check_filtration",
]

_HALF = Fraction(1, 2)


class OperatorTag(str, Enum):
    T0t = "T0t"
    T1t = "T1t"
    U0t = "U0t"
    Yt = "Yt"
    X = "X"


def involution_s1(f: LaurentPoly) -> LaurentPoly:
    """``f(z) -> f(1/z)``."""
    return f.substitute_inverse(1)


def involution_s0(f: LaurentPoly, p: ParamSet) -> LaurentPoly:
    """``f(z) -> f(q/z)``."""
    return f.substitute_inverse(p.q)


def skew_reduced(f: LaurentPoly, flavor: str, p: ParamSet | None = None) -> LaurentPoly:
    """Antisymmetric part divided by ``z^2 - 1`` (plain) or ``z^2 - q`` (q)."""
    if flavor == PLAIN:
        skew = (f - involution_s1(f)).scale(_HALF)
        return skew.divide_z2_minus(1)
    if flavor == QFLAVOR:
        if p is None:
            raise ValueError("q-flavored skew reduction needs a ParamSet")
        skew = (f - involution_s0(f, p)).scale(_HALF)
        return skew.divide_z2_minus(p.q)
    raise ValueError(f"unknown flavor {flavor!r}")


def _lin(*terms: tuple[int, Fraction]) -> LaurentPoly:
    return LaurentPoly(dict(terms))


def _t1(f: LaurentPoly, p: ParamSet) -> LaurentPoly:
    a, b = p.a, p.b
    # (1 - a z)(1 - b z) = 1 - (a+b) z + ab z^2
    mult = _lin((0, Fraction(1)), (1, -(a + b)), (2, a * b))
    return f.scale(-a * b) + (mult * skew_reduced(f, PLAIN)).scale(2)


def _t0(f: LaurentPoly, p: ParamSet) -> LaurentPoly:
    c, d, q = p.c, p.d, p.q
    # (z-c)(z-d) (f(q/z) - f(z)) / (z^2 - q), the quotient taken exactly
    diff = (involution_s0(f, p) - f).divide_z2_minus(q)
    mult = _lin((2, Fraction(1)), (1, -(c + d)), (0, c * d))
    return f.scale(p.t0) + mult * diff


def _u0(f: LaurentPoly, p: ParamSet) -> LaurentPoly:
    c, d, q = p.c, p.d, p.q
    first = _lin((0, c + d), (-1, -c * d)) * f
    # (z-c)(z-d)/z = z - (c+d) + cd/z
    mult = _lin((1, Fraction(1)), (0, -(c + d)), (-1, c * d))
    return first - (mult * skew_reduced(f, QFLAVOR, p)).scale(2 * q)


def apply(op: OperatorTag | str, f: LaurentPoly, p: ParamSet) -> LaurentPoly:
    """Apply one of ``T0t, T1t, U0t, Yt, X`` to ``f``."""
    op = OperatorTag(op)
    if op is OperatorTag.T1t:
        return _t1(f, p)
    if op is OperatorTag.T0t:
        return _t0(f, p)
    if op is OperatorTag.U0t:
        return _u0(f, p)
    if op is OperatorTag.Yt:
        return _t1(_t0(f, p), p)
    return f.shift(1)


def check_quadratic(op: OperatorTag | str, p: ParamSet, test_degree: int) -> bool:
    """``(op + 1)(op - t)`` kills every ``z^k`` with ``|k| <= test_degree``."""
    op = OperatorTag(op)
    if op is OperatorTag.T1t:
        t = p.t1
    elif op is OperatorTag.T0t:
        t = p.t0
    else:
        raise ValueError("quadratic relations are defined for T0t and T1t only")
    for k in range(-test_degree, test_degree + 1):
        m = LaurentPoly.monomial(k)
        inner = apply(op, m, p) - m.scale(t)
        if not (apply(op, inner, p) + inner).is_zero():
            return False
    return True


def _within(f: LaurentPoly, r: int) -> bool:
    return f.is_zero() or zz_position(zz_degree(f)) <= zz_position(r)


def check_filtration(p: ParamSet, n_max: int) -> bool:
    """U0t sends R_n into R_{-(n+1)} and keeps R_{-(n+1)}; T1t sends
    R_{-(n+1)} into R_{n+1} and keeps R_n.  Checked on basis elements."""
    for n in range(n_max + 1):
        fn = basis_element(n, PLAIN)
        hn1 = basis_element(-(n + 1), PLAIN)
        fnq = basis_element(n, QFLAVOR, p)
        hn1q = basis_element(-(n + 1), QFLAVOR, p)
        if not _within(apply(OperatorTag.U0t, fnq, p), -(n + 1)):
            return False
        if not _within(apply(OperatorTag.U0t, hn1q, p), -(n + 1)):
            return False
        if not _within(apply(OperatorTag.T1t, hn1, p), n + 1):
            return False
        if not _within(apply(OperatorTag.T1t, fn, p), n):
            return False
    return True
