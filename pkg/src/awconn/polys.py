"""Nonsymmetric polynomials ``E_r``, symmetric ``P_n`` and their coefficients.

``E_r`` is built by the two-step creation recursion starting from ``E_0 = 1``:

    E_{-(n+1)} = (a^_{-(n+1)} U0 + b^_{-(n+1)}) E_n
    E_{n+1}    = (c^_{n+1}    T1 + d^_{n+1})    E_{-(n+1)}

with the hat coefficients chosen so that every ``E_r`` is zig-zag monic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import NonGenericError, ParamSet, require_generic
from .laurent import PLAIN, QFLAVOR, LaurentPoly, expand_in_basis, zz_degree, zz_position
from .operators import OperatorTag, apply, involution_s1

__all__ = [
    "NSPolyRecord",
    "HatCoeffs",
    "mu_tilde",
    "hat_coeffs_increasing",
    "hat_coeffs_decreasing",
    "zeta_tilde",
    "nonsymmetric_E",
    "eigen_E_oracle",
    "low_codegree_coeff",
    "low_codegree_coeffs",
    "gamma_coeff",
    "hecke_symmetrize",
    "verify_appendixB_pair",
    "appendixB_failure",
    "check_two_projection",
    "psi",
    "psi_normalized_E",
]


def _p1(x: Fraction) -> Fraction:
    """``(x|q)_1 = 1 - x``."""
    return 1 - x


@dataclass(frozen=True)
class NSPolyRecord:
    r: int
    poly: LaurentPoly
    params: ParamSet

    @property
    def eigenvalue(self) -> Fraction:
        return mu_tilde(self.r, self.params)


@dataclass(frozen=True)
class HatCoeffs:
    """Hat coefficients for one step pair, keyed by their zig-zag index."""

    a_hat: dict[int, Fraction]
    b_hat: dict[int, Fraction]
    c_hat: dict[int, Fraction]
    d_hat: dict[int, Fraction]


def mu_tilde(r: int, p: ParamSet) -> Fraction:
    """Eigenvalue of ``Y`` on ``E_r``: ``abcd q^{r-1}`` or ``q^r``."""
    if r >= 0:
        return p.a * p.b * p.c * p.d * p.q ** (r - 1)
    return p.q**r


def hat_coeffs_increasing(n: int, p: ParamSet) -> HatCoeffs:
    """``a^_{-(n+1)}, b^_{-(n+1)}, c^_{n+1}, d^_{n+1}`` for ``n >= 0``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    require_generic(p, n + 1)
    a, b, c, d, q = p.a, p.b, p.c, p.d, p.q
    ab, cd = a * b, c * d
    abcd = ab * cd
    qn = q**n
    a_hat = -1 / (cd * qn)
    b_hat = ((c + d) - cd * qn * (a + b)) / (cd * qn * _p1(abcd * qn * qn))
    m = n + 1
    qm = q**m
    c_hat = -1 / ab
    d_hat = -(_p1(ab * qm) + ab * _p1(cd * qm / q)) / (ab * _p1(abcd * qm * qm / q))
    return HatCoeffs({-(n + 1): a_hat}, {-(n + 1): b_hat}, {m: c_hat}, {m: d_hat})


def appendixB_failure(p: ParamSet, depth: int) -> str | None:
    """Extra denominators of the zig-zag-decreasing coefficients."""
    q = p.q
    for n in range(depth + 1):
        qn = q**n
        for name, x in (("ac", p.a * p.c), ("bc", p.b * p.c), ("ad", p.a * p.d), ("bd", p.b * p.d)):
            if x * qn == 1:
                return f"{name}*q^{n}-1"
    return None


def hat_coeffs_decreasing(n: int, p: ParamSet) -> HatCoeffs:
    """``a^_n, b^_n, c^_{-(n+1)}, d^_{-(n+1)}`` of the inverse steps.

    These realize ``E_n = (a^_n U0 + b^_n) E_{-(n+1)}`` and
    ``E_{-(n+1)} = (c^_{-(n+1)} T1 + d^_{-(n+1)}) E_{n+1}``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    require_generic(p, n + 1)
    bad = appendixB_failure(p, n + 1)
    if bad is not None:
        raise NonGenericError(f"non-generic parameters {p}: factor {bad} vanishes")
    a, b, c, d, q = p.a, p.b, p.c, p.d, p.q
    ab, cd = a * b, c * d
    abcd = ab * cd
    qn = q**n
    cross = _p1(a * c * qn) * _p1(b * c * qn) * _p1(a * d * qn) * _p1(b * d * qn)
    e2n = _p1(abcd * qn * qn)
    a_hat = qn * e2n**2 / cross
    b_hat = cd * qn * qn * e2n * (ab * (c + d) * qn - (a + b)) / cross
    e2n1 = _p1(abcd * qn * qn * q)
    lower = _p1(qn * q) * _p1(ab * qn * q) * _p1(cd * qn) * _p1(abcd * qn)
    c_hat = e2n1**2 / lower
    d_hat = ab * qn * e2n1 * (q * _p1(abcd * qn) + cd * _p1(qn * q)) / lower
    return HatCoeffs({n: a_hat}, {n: b_hat}, {-(n + 1): c_hat}, {-(n + 1): d_hat})


def zeta_tilde(which: int, r: int, p: ParamSet) -> Fraction:
    """Closed forms of the eigenvalue-difference factors.

    ``which = 0`` pairs with the ``U0`` steps and ``which = 1`` with ``T1``:
    ``zeta_{0,r}`` is ``(mu_r - mu_{partner})/a^_r`` and ``zeta_{1,r}`` is
    ``(mu_{partner} - mu_r)/c^_r``, the partner being the other end of the
    step that creates (or removes) ``E_r``.
    """
    a, b, c, d, q = p.a, p.b, p.c, p.d, p.q
    ab, cd = a * b, c * d
    abcd = ab * cd
    if which == 0:
        if r >= 0:
            n = r
            qn = q**n
            cross = _p1(a * c * qn) * _p1(b * c * qn) * _p1(a * d * qn) * _p1(b * d * qn)
            return -cross / (q ** (2 * n + 1) * _p1(abcd * qn * qn))
        n = -r - 1
        return -cd / q * _p1(abcd * q ** (2 * n))
    if which == 1:
        if r >= 1:
            n = r
            return -ab * q**-n * _p1(abcd * q ** (2 * n - 1))
        if r < 0:
            n = -r - 1
            qn = q**n
            num = _p1(qn * q) * _p1(ab * qn * q) * _p1(cd * qn) * _p1(abcd * qn)
            return -num / (qn * q * _p1(abcd * qn * qn * q))
        raise ValueError("zeta_{1,0} is not defined")
    raise ValueError("which must be 0 or 1")


@lru_cache(maxsize=4096)
def _E(r: int, p: ParamSet) -> LaurentPoly:
    if r == 0:
        return LaurentPoly.const(1)
    if r < 0:
        n = -r - 1
        h = hat_coeffs_increasing(n, p)
        prev = _E(n, p)
        return apply(OperatorTag.U0t, prev, p).scale(h.a_hat[r]) + prev.scale(h.b_hat[r])
    h = hat_coeffs_increasing(r - 1, p)
    prev = _E(-r, p)
    return apply(OperatorTag.T1t, prev, p).scale(h.c_hat[r]) + prev.scale(h.d_hat[r])


def nonsymmetric_E(r: int, p: ParamSet) -> NSPolyRecord:
    """The zig-zag monic nonsymmetric polynomial of degree ``r``."""
    require_generic(p, max(abs(r), 1))
    return NSPolyRecord(r, _E(r, p), p)


def eigen_E_oracle(r: int, p: ParamSet) -> LaurentPoly:
    """``E_r`` found directly as the monic eigenvector of ``Y``.

    ``Y`` is triangular for the zig-zag order, so starting from ``z^r`` each
    residual's leading term can be cancelled by a single monomial whose own
    eigenvalue is read off from the diagonal of ``Y``.
    """
    require_generic(p, max(abs(r), 1))
    target = mu_tilde(r, p)
    poly = LaurentPoly.monomial(r)
    resid = apply(OperatorTag.Yt, poly, p) - poly.scale(target)
    while not resid.is_zero():
        s = zz_degree(resid)
        if zz_position(s) >= zz_position(r):
            raise ArithmeticError("Y is not triangular on this input")
        zs = LaurentPoly.monomial(s)
        diag = apply(OperatorTag.Yt, zs, p)[s]
        x = -resid[s] / (diag - target)
        poly = poly + zs.scale(x)
        resid = resid + (apply(OperatorTag.Yt, zs, p) - zs.scale(target)).scale(x)
    return poly


def psi(r: int, p: ParamSet) -> Fraction:
    """Alternative normalization factor: 1 for ``r >= 0``."""
    if r >= 0:
        return Fraction(1)
    return _p1(p.q**-r) * _p1(p.c * p.d * p.q ** (-r - 1))


def psi_normalized_E(r: int, p: ParamSet) -> LaurentPoly:
    """``psi(r) E_r``; an output transform only, never used internally."""
    return nonsymmetric_E(r, p).poly.scale(psi(r, p))


# -- low codegree coefficients ---------------------------------------------

_LOW_NAMES = ("lambda_diag", "mu_codeg1", "lambda_codeg2")


def low_codegree_coeff(name: str, r: int, p: ParamSet, flavor: str = PLAIN) -> Fraction:
    """Closed form for one leading coefficient of ``E_r`` in a basis.

    ``lambda_diag`` is the coefficient at index ``r``; ``mu_codeg1`` the one
    at the next index down (``-r`` for ``r > 0``, ``|r| - 1`` for ``r < 0``);
    ``lambda_codeg2`` the one two steps down (``r - 1`` or ``r + 1``).
    """
    if name not in _LOW_NAMES:
        raise ValueError(f"unknown coefficient {name!r}")
    if flavor not in (PLAIN, QFLAVOR):
        raise ValueError(f"unknown flavor {flavor!r}")
    a, b, c, d, q = p.a, p.b, p.c, p.d, p.q
    ab, cd = a * b, c * d
    abcd = ab * cd
    if name == "lambda_diag":
        if r < 0 and flavor == QFLAVOR:
            return q**r
        return Fraction(1)
    if r == 0:
        raise ValueError("undefined coefficient")
    if r > 0:
        n = r - 1
        qn = q**n
        if name == "mu_codeg1":
            den = _p1(abcd * qn * qn * q)
            if flavor == PLAIN:
                return -_p1(qn * q) * _p1(cd * qn) / den
            return cd * _p1(qn * q) * _p1(ab * qn * q) / (q * den)
        m = r
        qm = q**m
        num = (c + d) * _p1(qm) * _p1(ab * qm) + q * (a + b) * _p1(qm) * _p1(cd * qm / q)
        return -num / (_p1(q) * _p1(abcd * qm * qm / q))
    n = -r - 1
    qn = q**n
    if name == "mu_codeg1":
        return (ab * qn * (c + d) - (a + b)) / _p1(abcd * qn * qn)
    if n == 0:
        raise ValueError("undefined coefficient")
    den = _p1(q) * _p1(abcd * qn * qn)
    if flavor == PLAIN:
        num = (c + d) * _p1(qn) * _p1(ab * qn * q) + q * (a + b) * _p1(qn) * _p1(cd * qn / q)
        return -num / den
    num = (c + d) * _p1(qn) * _p1(ab * qn) + (a + b) * _p1(qn) * _p1(cd * qn)
    return -num / (qn * den)


def low_codegree_index(name: str, r: int) -> int:
    """Basis index that :func:`low_codegree_coeff` refers to."""
    if name == "lambda_diag":
        return r
    if name == "mu_codeg1":
        return -r if r > 0 else -r - 1
    return r - 1 if r > 0 else r + 1


def low_codegree_coeffs(r: int, p: ParamSet) -> dict[tuple[str, str], Fraction]:
    """Every defined low-codegree closed form for ``E_r``, in both flavors.

    Keys are ``(name, flavor)``; undefined entries are simply absent.
    """
    require_generic(p, max(abs(r), 1))
    out: dict[tuple[str, str], Fraction] = {}
    for name in _LOW_NAMES:
        for flavor in (PLAIN, QFLAVOR):
            try:
                out[(name, flavor)] = low_codegree_coeff(name, r, p, flavor)
            except ValueError:
                continue
    return out


def check_low_codegree(r: int, p: ParamSet) -> list[tuple[str, str, bool]]:
    """Compare the closed forms with expansions of the computed ``E_r``."""
    poly = nonsymmetric_E(r, p).poly
    exps = {PLAIN: expand_in_basis(poly, PLAIN, p), QFLAVOR: expand_in_basis(poly, QFLAVOR, p)}
    out = []
    for (name, flavor), value in low_codegree_coeffs(r, p).items():
        got = exps[flavor].get(low_codegree_index(name, r), Fraction(0))
        out.append((name, flavor, got == value))
    return out


def check_to_from_q(r: int, p: ParamSet) -> bool:
    """Leading-order relations between the plain and q expansions of ``E_r``."""
    q = p.q
    poly = nonsymmetric_E(r, p).poly
    pl = expand_in_basis(poly, PLAIN, p)
    qf = expand_in_basis(poly, QFLAVOR, p)

    def g(m, i):
        return m.get(i, Fraction(0))

    if r < 0:
        n = -r - 1
        ok = g(pl, r) == q ** (n + 1) * g(qf, r)
        ok &= g(pl, n) == g(qf, n)
        if n >= 1:
            ok &= g(pl, -n) == g(qf, n) * (q**n - 1) + g(qf, -n) * q**n
        return ok
    if r == 0:
        return g(pl, 0) == g(qf, 0) == 1
    n = r - 1
    ok = g(qf, r) == g(pl, r)
    ok &= g(qf, -r) == g(pl, r) * (q**-r - 1) + g(pl, -r) * q**-r
    ok &= g(qf, n) == g(pl, n)
    return ok


# -- symmetric polynomials -------------------------------------------------


def gamma_coeff(n: int, p: ParamSet) -> Fraction:
    """``gamma_n = (q^n, cd q^{n-1}|q)_1 / (abcd q^{2n-1}|q)_1`` for ``n >= 1``."""
    if n < 1:
        raise ValueError("gamma_n needs n >= 1")
    require_generic(p, n)
    q, cd = p.q, p.c * p.d
    return _p1(q**n) * _p1(cd * q ** (n - 1)) / _p1(p.a * p.b * cd * q ** (2 * n - 1))


@lru_cache(maxsize=1024)
def _P(n: int, p: ParamSet) -> LaurentPoly:
    if n == 0:
        return LaurentPoly.const(1)
    e = _E(-n, p)
    return (apply(OperatorTag.T1t, e, p) + e).scale(1 / p.t1)


def hecke_symmetrize(n: int, p: ParamSet) -> LaurentPoly:
    """``P_n = t1^{-1} (T1 + 1) E_{-n}``, with ``P_0 = 1``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    require_generic(p, max(n, 1))
    return _P(n, p)


def check_hecke(n: int, p: ParamSet) -> bool:
    pn = hecke_symmetrize(n, p)
    if n == 0:
        return pn == LaurentPoly.const(1)
    want = _E(n, p) + _E(-n, p).scale(gamma_coeff(n, p))
    return pn == want and involution_s1(pn) == pn and zz_degree(pn) == n and pn[n] == 1


def check_two_projection(n: int, p: ParamSet) -> bool:
    """``L1 L2 = 0`` and ``L1^2 = (1 + 1/t1) L1`` on ``span{E_-n, E_n}``.

    Here ``L1 = t1^{-1}(T1 + 1)`` and ``L2 = (1 + t1^{-1}) - L1``.
    """
    inv = 1 / p.t1

    def L1(f):
        return (apply(OperatorTag.T1t, f, p) + f).scale(inv)

    def L2(f):
        return f.scale(1 + inv) - L1(f)

    for f in (_E(-n, p), _E(n, p)):
        if not L1(L2(f)).is_zero():
            return False
        if L1(L1(f)) != L1(f).scale(1 + inv):
            return False
    return True


# -- inverse steps ---------------------------------------------------------


def verify_appendixB_pair(n: int, p: ParamSet) -> bool:
    """Check the decreasing steps and the eigenvalue-difference factors."""
    require_generic(p, n + 2)
    dec = hat_coeffs_decreasing(n, p)
    inc = hat_coeffs_increasing(n, p)
    en, em, en1 = _E(n, p), _E(-(n + 1), p), _E(n + 1, p)
    down0 = apply(OperatorTag.U0t, em, p).scale(dec.a_hat[n]) + em.scale(dec.b_hat[n])
    down1 = apply(OperatorTag.T1t, en1, p).scale(dec.c_hat[-(n + 1)]) + en1.scale(dec.d_hat[-(n + 1)])
    if down0 != en or down1 != em:
        return False
    mu = lambda r: mu_tilde(r, p)  # noqa: E731
    checks = [
        zeta_tilde(0, n, p) == (mu(n) - mu(-(n + 1))) / dec.a_hat[n],
        zeta_tilde(0, -(n + 1), p) == (mu(-(n + 1)) - mu(n)) / inc.a_hat[-(n + 1)],
        zeta_tilde(1, n + 1, p) == (mu(-(n + 1)) - mu(n + 1)) / inc.c_hat[n + 1],
        zeta_tilde(1, -(n + 1), p) == (mu(n + 1) - mu(-(n + 1))) / dec.c_hat[-(n + 1)],
    ]
    return all(checks)
