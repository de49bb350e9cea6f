import random
from fractions import Fraction

import pytest

from awconn.arith import (
    NonGenericError,
    ParamSet,
    fmt_rat,
    genericity_failure,
    is_generic,
    poch,
    qpoch,
    qpoch_multi,
    require_generic,
    to_rat,
)
from awconn.cocycle import pochneg_holds


def loop_qpoch(x, q, n):
    out = Fraction(1)
    for k in range(n):
        out *= 1 - x * q**k
    return out


def test_qpoch_examples():
    assert qpoch(Fraction(3, 4), Fraction(1, 5), 0) == 1
    assert qpoch(Fraction(1, 2), Fraction(1, 3), 2) == Fraction(5, 12)
    q = Fraction(7, 11)
    assert qpoch(q, q, 1) == 1 - q


def test_qpoch_matches_loop():
    rng = random.Random(1)
    for _ in range(20):
        x = Fraction(rng.randint(-30, 30), rng.randint(1, 30))
        q = Fraction(rng.randint(1, 30), rng.randint(1, 30))
        n = rng.randint(0, 8)
        assert qpoch(x, q, n) == loop_qpoch(x, q, n)


def test_qpoch_splits():
    rng = random.Random(2)
    for _ in range(20):
        x = Fraction(rng.randint(1, 97), rng.randint(1, 97))
        q = Fraction(rng.randint(1, 97), rng.randint(1, 97))
        for m in range(0, 11, 3):
            for n in range(0, 11, 4):
                assert qpoch(x, q, m + n) == qpoch(x, q, m) * qpoch(x * q**m, q, n)


def test_qpoch_multi_is_product():
    q = Fraction(2, 3)
    xs = [Fraction(1, 5), Fraction(-3), Fraction(7, 2)]
    assert qpoch_multi(xs, q, 3) == qpoch(xs[0], q, 3) * qpoch(xs[1], q, 3) * qpoch(xs[2], q, 3)


def test_poch():
    assert poch(Fraction(9, 7), 0) == 1
    assert poch(3, 2) == 12
    assert poch(Fraction(1, 2), 3) == Fraction(15, 8)


def test_pochneg():
    rng = random.Random(3)
    for _ in range(50):
        q = Fraction(rng.choice([-1, 1]) * rng.randint(1, 20), rng.randint(1, 20))
        d, e, f, g, p = (rng.randint(-6, 6) for _ in range(5))
        assert pochneg_holds(q, d, e, f, g, p)


def test_exact_division_roundtrip():
    rng = random.Random(4)
    for _ in range(1000):
        x = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6))
        y = Fraction(rng.choice([-1, 1]) * rng.randint(1, 10**6), rng.randint(1, 10**6))
        assert (x * y) / y == x


def test_to_rat_and_format():
    assert to_rat("-134/418") == Fraction(-67, 209)
    assert to_rat(5) == Fraction(5)
    assert fmt_rat(Fraction(-67, 209)) == "-67/209"
    assert fmt_rat(Fraction(3)) == "3/1"
    with pytest.raises(TypeError):
        to_rat(0.5)
    with pytest.raises((TypeError, ValueError)):
        to_rat(True)


def test_paramset_scalars():
    p = ParamSet.of(2, 3, 5, 7, "1/2")
    assert p.t0 == Fraction(-70)
    assert p.t1 == Fraction(-6)


@pytest.mark.parametrize("bad", [dict(q=0), dict(q=1), dict(q=-1), dict(a=0), dict(d=0)])
def test_paramset_rejects(bad):
    vals = dict(a=2, b=3, c=5, d=7, q=Fraction(1, 2))
    vals.update(bad)
    with pytest.raises(NonGenericError):
        ParamSet.of(**vals)


def test_genericity_examples():
    assert is_generic(ParamSet.of(2, 3, 5, 7, "1/2"), 8)
    # abcd*q = 1
    assert not is_generic(ParamSet.of(2, 3, 5, 7, "1/210"), 1)
    assert genericity_failure(ParamSet.of(1, 1, 1, 1, "1/2"), 1) is not None


def test_require_generic_names_factor():
    with pytest.raises(NonGenericError, match="ab"):
        require_generic(ParamSet.of(2, "1/2", 5, 7, "1/2"), 1)
    with pytest.raises(ValueError):
        genericity_failure(ParamSet.of(2, 3, 5, 7, "1/2"), 0)
