import random
from fractions import Fraction

import pytest

from awconn.arith import NonGenericError, ParamSet
from awconn.connection import (
    ShiftKind,
    ShiftSpec,
    TransitionMatrix,
    iter_entries,
    low_codegree_transition_check,
    matrix_labels,
    nonsym_d,
    specialization_check,
    specialization_formulas,
    sym_conn_coeff,
    symmetric_connection_check,
    tau_sigma_closed,
    transition_matrix_closed,
    transition_matrix_oracle,
)
from awconn.polys import nonsymmetric_E

from conftest import BASE, ODD, generic_shift

E_VAL = Fraction(11)


def spec_a(p=BASE, e=E_VAL):
    return ShiftSpec.shift_a(p, e)


def test_labels():
    assert matrix_labels(2) == [0, 1, 2, -1, -2]
    assert len(list(iter_entries(3))) == 28


def test_sym_coeff_examples():
    s = spec_a()
    a, b, c, d, q, e = BASE.a, BASE.b, BASE.c, BASE.d, BASE.q, E_VAL
    want = e * (1 - b * c) * (1 - b * d) * (1 - c * d) * (1 - a / e) / ((1 - a * b * c * d) * (1 - b * c * d * e))
    assert sym_conn_coeff(0, 1, s) == want
    for n in range(5):
        assert sym_conn_coeff(n, n, s) == 1
    same = spec_a(e=BASE.a)
    assert all(sym_conn_coeff(m, 4, same) == 0 for m in range(4))
    with pytest.raises(ValueError):
        sym_conn_coeff(3, 2, s)


def test_nonsym_d_examples():
    for kind in ShiftKind:
        s = ShiftSpec(kind, ODD, Fraction(7, 3))
        for r in range(-4, 0):
            assert nonsym_d(r, r, s) == 1
    for r in range(5):
        assert nonsym_d(r, r, spec_a()) == 1
    # (q|q)_1 / (q, cd|q)_1
    assert nonsym_d(0, -1, spec_a()) == Fraction(-1, 34)
    with pytest.raises(ValueError):
        nonsym_d(-1, 0, spec_a())


def test_corner_entry_against_oracle():
    s = spec_a()
    want = sym_conn_coeff(0, 1, s) / (1 - BASE.c * BASE.d)
    assert tau_sigma_closed(0, -1, s) == want
    assert transition_matrix_oracle(s, 1).entry(0, -1) == want


@pytest.mark.parametrize("kind", ["a", "c"])
def test_closed_equals_oracle(kind):
    rng = random.Random(10 if kind == "a" else 11)
    for _ in range(2):
        s = generic_shift(rng, kind, 8)
        closed = transition_matrix_closed(s, 6)
        oracle = transition_matrix_oracle(s, 6)
        assert closed.mismatches(oracle) == []
        assert closed.is_triangular()
        assert all(closed.entry(r, r) == 1 for r in closed.labels)


@pytest.mark.parametrize("kind", ["a", "c"])
def test_tau_sigma_is_d_times_c(kind):
    s = ShiftSpec(ShiftKind(kind), ODD, Fraction(5, 11))
    for r, c in iter_entries(6):
        assert tau_sigma_closed(r, c, s) == nonsym_d(r, c, s) * sym_conn_coeff(abs(r), abs(c), s)


def test_identity_shift():
    for kind, slot in (("a", "a"), ("c", "c")):
        s = ShiftSpec(ShiftKind(kind), ODD, getattr(ODD, slot))
        assert transition_matrix_closed(s, 5) == TransitionMatrix.identity(5)
        assert transition_matrix_oracle(s, 5) == TransitionMatrix.identity(5)


def test_oracle_column_reconstructs():
    s = ShiftSpec.shift_c(ODD, Fraction(9, 4))
    m = transition_matrix_oracle(s, 4)
    for col in m.labels:
        total = sum((nonsymmetric_E(r, s.target).poly.scale(m.entry(r, col)) for r in m.labels), nonsymmetric_E(0, ODD).poly.scale(0))
        assert total == nonsymmetric_E(col, ODD).poly


@pytest.mark.parametrize("kind", ["a", "c"])
def test_symmetric_pipeline(kind):
    assert symmetric_connection_check(ShiftSpec(ShiftKind(kind), BASE, Fraction(13, 4)), 6)
    assert symmetric_connection_check(ShiftSpec(ShiftKind(kind), ODD, Fraction(2, 7)), 6)


@pytest.mark.parametrize("kind", ["a", "c"])
def test_low_codegree_entries(kind):
    s = ShiftSpec(ShiftKind(kind), ODD, Fraction(19, 6))
    results = low_codegree_transition_check(s, 6)
    assert results and all(ok for _, _, ok in results)


@pytest.mark.parametrize("kind", ["a", "c"])
def test_single_q_step(kind):
    for p in (BASE, ODD):
        results = specialization_check(kind, p, 6)
        # entries inside the N = 6 window: sigma n < 6, tau_pos 1..6, tau_neg 1..5
        assert len(results) == 6 + 6 + 6 + 5
        assert all(ok for _, _, ok in results)


def test_single_q_step_sigma_display():
    n = 2
    a, b, c, d, q = BASE.a, BASE.b, BASE.c, BASE.d, BASE.q
    abcd = a * b * c * d
    want = a * q * (1 - b * c * q**n) * (1 - b * d * q**n) * (1 - 1 / q) / ((1 - abcd * q ** (2 * n)) * (1 - abcd * q ** (2 * n + 1)))
    (pos, value) = specialization_formulas(ShiftKind.A, BASE, n)["sigma_pos_neg"]
    assert pos == (2, -3) and value == want
    assert transition_matrix_closed(spec_a(e=a * q), 3).entry(2, -3) == want


def test_banded_single_step():
    m = transition_matrix_closed(spec_a(e=BASE.a * BASE.q), 6)
    for r, s in iter_entries(6):
        gap = (2 * s if s >= 0 else -2 * s - 1) - (2 * r if r >= 0 else -2 * r - 1)
        if gap > 2:
            assert m.entry(r, s) == 0


def test_matrix_product_needs_triangular():
    m = TransitionMatrix.identity(2)
    bad = TransitionMatrix.identity(2)
    bad.set(2, 0, 1)
    with pytest.raises(ValueError, match="triangular"):
        m @ bad


def test_serialization():
    m = transition_matrix_closed(spec_a(), 1)
    csv_text = m.to_csv()
    assert csv_text.splitlines()[0] == "E0,E1,E-1"
    assert csv_text.splitlines()[1].split(",")[0] == "1/1"
    js = m.to_json_dict()
    assert set(js) == {"0,0", "0,1", "1,1", "-1,1", "0,-1", "-1,-1"}
    assert Fraction(js["0,-1"]) == m.entry(0, -1)


def test_nongeneric_target_rejected():
    # b c d e q^0 = 1 when e = 1/105
    with pytest.raises(NonGenericError):
        transition_matrix_closed(spec_a(e=Fraction(1, 105)), 2)
