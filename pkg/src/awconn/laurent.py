"""Sparse Laurent polynomials in ``z`` and the zig-zag order on exponents.

The zig-zag order is ``0 < -1 < 1 < -2 < 2 < ...``; it is realized by
:func:`zz_position`, which maps the integers bijectively onto the naturals.
The almost symmetric bases ``f_n = (z+1/z)^n``, ``h_{n+1} = z^{-1}(z+1/z)^n``
and their q-analogs are ordered ``f_0, h_1, f_1, h_2, ...``, the basis element
attached to the zig-zag index ``n >= 0`` being ``f_n`` and the one attached to
``-(n+1)`` being ``h_{n+1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .arith import ParamSet, RatLike, fmt_rat, to_rat

__all__ = [
    "LaurentPoly",
    "zz_position",
    "zz_from_position",
    "zz_compare",
    "zz_key",
    "zz_degree",
    "zz_indices",
    "basis_f",
    "basis_h",
    "basis_fq",
    "basis_hq",
    "basis_element",
    "expand_in_basis",
    "reconstruct",
    "Congruence",
    "basis_convert_low_codegree",
    "check_basis_conversion",
]

PLAIN = "plain"
QFLAVOR = "q"


def zz_position(r: int) -> int:
    """Rank of ``r`` in the zig-zag order."""
    return 2 * r if r >= 0 else -2 * r - 1


def zz_from_position(pos: int) -> int:
    if pos < 0:
        raise ValueError("zig-zag positions are nonnegative")
    return pos // 2 if pos % 2 == 0 else -(pos + 1) // 2


zz_key = zz_position


def zz_compare(r: int, s: int) -> int:
    """-1, 0 or 1 as ``r`` precedes, equals or follows ``s`` in zig-zag order."""
    pr, ps = zz_position(r), zz_position(s)
    return (pr > ps) - (pr < ps)


def zz_indices(N: int) -> list[int]:
    """All indices ``r`` with ``|r| <= N`` in increasing zig-zag order."""
    return [zz_from_position(k) for k in range(2 * N + 1)]


class LaurentPoly:
    """Immutable sparse Laurent polynomial over the rationals."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, RatLike] | None = None) -> None:
        clean: dict[int, Fraction] = {}
        if coeffs:
            for k, v in coeffs.items():
                v = to_rat(v)
                if v:
                    clean[int(k)] = v
        self._c = clean
        self._hash: int | None = None

    @classmethod
    def _raw(cls, coeffs: dict[int, Fraction]) -> "LaurentPoly":
        out = cls.__new__(cls)
        out._c = coeffs
        out._hash = None
        return out

    @classmethod
    def monomial(cls, k: int, coeff: RatLike = 1) -> "LaurentPoly":
        return cls({k: coeff})

    @classmethod
    def const(cls, coeff: RatLike) -> "LaurentPoly":
        return cls({0: coeff})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls._raw({})

    # -- access -----------------------------------------------------------
    def __getitem__(self, k: int) -> Fraction:
        return self._c.get(k, Fraction(0))

    def items(self):
        return sorted(self._c.items())

    def exponents(self) -> list[int]:
        return sorted(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def __len__(self) -> int:
        return len(self._c)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other) -> "LaurentPoly":
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._c)
        for k, v in other._c.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({k: -v for k, v in self._c.items()})

    def __sub__(self, other) -> "LaurentPoly":
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def scale(self, s: RatLike) -> "LaurentPoly":
        s = to_rat(s)
        if not s:
            return LaurentPoly.zero()
        return LaurentPoly._raw({k: v * s for k, v in self._c.items()})

    def shift(self, m: int) -> "LaurentPoly":
        """Multiply by ``z**m``."""
        return LaurentPoly._raw({k + m: v for k, v in self._c.items()})

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict[int, Fraction] = {}
        for i, u in self._c.items():
            for j, v in other._c.items():
                out[i + j] = out.get(i + j, 0) + u * v
        return LaurentPoly._raw({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def substitute_inverse(self, scale: RatLike = 1) -> "LaurentPoly":
        """Return ``f(scale/z)``: ``z^k`` becomes ``scale^k z^{-k}``."""
        s = to_rat(scale)
        return LaurentPoly._raw({-k: v * s**k for k, v in self._c.items()})

    def divide_z2_minus(self, u: RatLike) -> "LaurentPoly":
        """Exact quotient by ``z^2 - u``; raises if the division is not exact."""
        u = to_rat(u)
        if not self._c:
            return LaurentPoly.zero()
        rem = dict(self._c)
        lo, hi = min(rem), max(rem)
        quot: dict[int, Fraction] = {}
        # f = z^2 g - u g; peel the top exponent off each time.
        for k in range(hi, lo + 1, -1):
            v = rem.pop(k, 0)
            if v:
                quot[k - 2] = v
                rem[k - 2] = rem.get(k - 2, 0) + u * v
        if any(rem.values()):
            raise ArithmeticError("skew part not divisible")
        return LaurentPoly._raw({k: v for k, v in quot.items() if v})

    def evaluate(self, z: RatLike) -> Fraction:
        z = to_rat(z)
        return sum((v * z**k for k, v in self._c.items()), Fraction(0))

    # -- serialization ----------------------------------------------------
    def to_json_dict(self) -> dict[str, str]:
        return {str(k): fmt_rat(v) for k, v in self.items()}

    @classmethod
    def from_json_dict(cls, data: Mapping[str, str]) -> "LaurentPoly":
        return cls({int(k): to_rat(v) for k, v in data.items()})

    def __repr__(self) -> str:
        if not self._c:
            return "LaurentPoly(0)"
        terms = " + ".join(f"({fmt_rat(v)})*z^{k}" for k, v in self.items())
        return f"LaurentPoly({terms})"


def _lift(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return LaurentPoly.const(x)
    return NotImplemented


def zz_degree(f: LaurentPoly) -> int:
    """The zig-zag-maximal exponent carrying a nonzero coefficient."""
    if f.is_zero():
        raise ValueError("degree of zero polynomial")
    return max(f.exponents(), key=zz_position)


Z = LaurentPoly.monomial(1)


@lru_cache(maxsize=None)
def _f_power(n: int, scale: Fraction) -> LaurentPoly:
    return (Z + LaurentPoly.monomial(-1, scale)) ** n


def basis_f(n: int) -> LaurentPoly:
    """``f_n = (z + 1/z)^n``."""
    if n < 0:
        raise ValueError("basis_f needs n >= 0")
    return _f_power(n, Fraction(1))


def basis_h(n: int) -> LaurentPoly:
    """``h_n = z^{-1} (z + 1/z)^{n-1}``."""
    if n < 1:
        raise ValueError("basis_h needs n >= 1")
    return _f_power(n - 1, Fraction(1)).shift(-1)


def basis_fq(n: int, p: ParamSet) -> LaurentPoly:
    """``f_{n,q} = (z + q/z)^n``."""
    if n < 0:
        raise ValueError("basis_fq needs n >= 0")
    return _f_power(n, p.q)


def basis_hq(n: int, p: ParamSet) -> LaurentPoly:
    """``h_{n,q} = q z^{-1} (z + q/z)^{n-1}``."""
    if n < 1:
        raise ValueError("basis_hq needs n >= 1")
    return _f_power(n - 1, p.q).shift(-1).scale(p.q)


def basis_element(r: int, flavor: str, p: ParamSet | None = None) -> LaurentPoly:
    """Basis element attached to zig-zag index ``r`` (``f_r`` or ``h_{-r}``)."""
    if flavor == PLAIN:
        return basis_f(r) if r >= 0 else basis_h(-r)
    if flavor == QFLAVOR:
        if p is None:
            raise ValueError("the q-flavored basis needs a ParamSet")
        return basis_fq(r, p) if r >= 0 else basis_hq(-r, p)
    raise ValueError(f"unknown basis flavor {flavor!r}")


def expand_in_basis(f: LaurentPoly, flavor: str = PLAIN, p: ParamSet | None = None) -> dict[int, Fraction]:
    """Coefficients of ``f`` in the ordered almost symmetric basis.

    Back-substitution from the zig-zag top: every basis element has its
    zig-zag leading monomial at its own index, so each step removes exactly
    one leading term.
    """
    out: dict[int, Fraction] = {}
    rest = f
    while not rest.is_zero():
        r = zz_degree(rest)
        b = basis_element(r, flavor, p)
        coef = rest[r] / b[r]
        out[r] = coef
        rest = rest - b.scale(coef)
    return dict(sorted(out.items(), key=lambda kv: zz_position(kv[0])))


def reconstruct(coeffs: Mapping[int, RatLike], flavor: str = PLAIN, p: ParamSet | None = None) -> LaurentPoly:
    out = LaurentPoly.zero()
    for r, c in coeffs.items():
        out = out + basis_element(r, flavor, p).scale(c)
    return out


@dataclass(frozen=True)
class Congruence:
    """``lhs`` equals ``sum coeffs[r] * basis_r`` modulo ``R_modulo``.

    ``target_flavor`` names the basis the right side is written in.
    """

    lhs: str
    n: int
    target_flavor: str
    coeffs: dict
    modulo: int

    def lhs_poly(self, p: ParamSet) -> LaurentPoly:
        kind, idx = self.lhs.split("_")
        m = int(idx)
        return {
            "f": lambda: basis_f(m),
            "h": lambda: basis_h(m),
            "fq": lambda: basis_fq(m, p),
            "hq": lambda: basis_hq(m, p),
        }[kind]()


def basis_convert_low_codegree(p: ParamSet, n: int) -> list[Congruence]:
    """The four leading-order conversions between plain and q bases.

    For ``n >= 1``:

    * ``f_n   = f_{n,q} + (q^{-n} - 1) h_{n,q}``  mod ``R_{-(n-1)}``
    * ``h_n   = q^{-n} h_{n,q}``                  mod ``R_{-(n-1)}``
    * ``h_{n+1,q} = q^{n+1} h_{n+1}``             mod ``R_{n-1}``
    * ``f_{n,q}   = f_n + (q^n - 1) h_n``         mod ``R_{n-1}``
    """
    if n < 1:
        raise ValueError("basis conversion needs n >= 1")
    q = p.q
    return [
        Congruence(f"f_{n}", n, QFLAVOR, {n: Fraction(1), -n: q**-n - 1}, -(n - 1)),
        Congruence(f"h_{n}", n, QFLAVOR, {-n: q**-n}, -(n - 1)),
        Congruence(f"hq_{n + 1}", n, PLAIN, {-(n + 1): q ** (n + 1)}, n - 1),
        Congruence(f"fq_{n}", n, PLAIN, {n: Fraction(1), -n: q**n - 1}, n - 1),
    ]


def check_basis_conversion(p: ParamSet, n: int) -> bool:
    """Compare each congruence with a full expansion above the modulus."""
    for cong in basis_convert_low_codegree(p, n):
        full = expand_in_basis(cong.lhs_poly(p), cong.target_flavor, p)
        cut = zz_position(cong.modulo)
        top = {r: v for r, v in full.items() if zz_position(r) > cut}
        want = {r: v for r, v in cong.coeffs.items() if v}
        if top != want:
            return False
    return True


def from_terms(terms: Iterable[tuple[int, RatLike]]) -> LaurentPoly:
    out: dict[int, Fraction] = {}
    for k, v in terms:
        out[k] = out.get(k, Fraction(0)) + to_rat(v)
    return LaurentPoly(out)
