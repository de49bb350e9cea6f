import collections
import random
from fractions import Fraction

import pytest

from awconn.arith import NonGenericError, ParamSet
from awconn.cocycle import (
    CocycleInstance,
    check_banded,
    check_block_identities,
    check_codeg1_additivity,
    check_continuous_cocycle,
    check_discrete_cocycle,
    ratio_lemma_records,
)
from awconn.connection import ShiftKind, ShiftSpec, TransitionMatrix, transition_matrix_closed

from conftest import BASE, ODD, generic_params


def chain_params(rng, kind, N=6, p_max=3):
    def ok(p):
        for pp in range(p_max + 1):
            bad = CocycleInstance(kind, p, pp, N).failure()
            if bad:
                return bad
        return None

    return generic_params(rng, N + p_max + 2, ok)


@pytest.mark.parametrize("kind", ["a", "c"])
def test_discrete_cocycle(kind):
    rng = random.Random(12)
    for base in (ODD, chain_params(rng, kind)):
        for p in range(4):
            assert check_discrete_cocycle(CocycleInstance(kind, base, p, 6))


def test_p0_is_trivial():
    inst = CocycleInstance("a", ODD, 0, 4)
    assert transition_matrix_closed(inst.lo, 4) == TransitionMatrix.identity(4)


@pytest.mark.parametrize("kind", ["a", "c"])
def test_block_identities(kind):
    for p in range(4):
        recs = check_block_identities(CocycleInstance(kind, ODD, p, 6))
        assert {r["status"] for r in recs} == {"pass"}
        counts = collections.Counter(r["identity"] for r in recs)
        assert counts["T00"] == 28 and counts["T01"] == counts["T10"] == counts["T11"] == 21
        assert set(recs[0]) == {"identity", "k", "n", "p", "status"}
    edge = [r for r in recs if r["identity"] == "T00" and r["k"] == r["n"]]
    assert len(edge) == 7


@pytest.mark.parametrize("kind", ["a", "c"])
def test_single_step_banded(kind):
    spec = ShiftSpec(ShiftKind(kind), BASE, getattr(BASE, kind) * BASE.q)
    assert check_banded(spec, 6)


def test_generic_shift_not_banded():
    assert not check_banded(ShiftSpec.shift_a(BASE, Fraction(11)), 4)


@pytest.mark.parametrize("kind", ["a", "c"])
def test_codeg1_additivity(kind):
    x = getattr(ODD, kind)
    y, z = Fraction(17, 3), Fraction(5, 29)
    assert check_codeg1_additivity(kind, ODD, x, y, z, 6)
    assert check_codeg1_additivity(kind, ODD, x, x, z, 6)
    assert check_codeg1_additivity(kind, ODD, x, y, x, 6)


@pytest.mark.parametrize("kind", ["a", "c"])
def test_continuous_cocycle(kind):
    rng = random.Random(13)
    for _ in range(2):
        x, y, z = (Fraction(rng.randint(1, 97), rng.randint(1, 97)) for _ in range(3))
        assert check_continuous_cocycle(kind, ODD, x, y, z, 5)


@pytest.mark.parametrize("kind", ["a", "c"])
def test_ratio_lemmas(kind):
    recs = ratio_lemma_records(kind, ODD, 3, 5)
    by_status = collections.Counter(r["status"] for r in recs)
    assert by_status["fail"] == 0
    assert by_status["pass"] > 0
    # T(x, x) is the identity: at p = 0 only ratios whose denominator sits on
    # the diagonal survive, and only the third lemma of each family has one
    survivors = {r["identity"].split(".")[1] for r in recs if r["p"] == 0 and r["status"] != "skipped"}
    assert survivors == {"3"}
    names = {r["identity"] for r in recs if r["status"] == "pass"}
    prefix = ("URT", "VRT") if kind == "a" else ("URTC", "VRTC")
    assert names == {f"{pre}.{i}" for pre in prefix for i in range(1, 5)}
    assert all(r["k"] < r["n"] <= 5 for r in recs)


def test_nongeneric_chain():
    # ab = 1, so the factor ab - 1 vanishes on every link of the chain
    base = ParamSet.of(1, 1, 5, 7, "1/2")
    inst = CocycleInstance("c", base, 1, 2)
    assert inst.failure() is not None
    with pytest.raises(NonGenericError):
        check_discrete_cocycle(inst)


def test_negative_p_rejected():
    with pytest.raises(ValueError):
        CocycleInstance("a", BASE, -1, 3)
