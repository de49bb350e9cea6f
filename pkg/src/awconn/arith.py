"""Exact rational scalars, Pochhammer products and parameter tuples.

All scalars are :class:`fractions.Fraction` values (aliased as ``Rat``), which
are kept in lowest terms with a positive denominator by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterator, Union

Rat = Fraction
RatLike = Union[Fraction, int, str]

__all__ = [
    "Rat",
    "NonGenericError",
    "ParamSet",
    "to_rat",
    "fmt_rat",
    "qpoch",
    "qpoch_multi",
    "poch",
    "genericity_failure",
    "is_generic",
    "require_generic",
]


class NonGenericError(ValueError):
    """Raised when a parameter tuple makes some required denominator vanish."""


def to_rat(value: RatLike) -> Fraction:
    """Coerce an int, a ``"p/q"`` string or a Fraction to a Fraction.

    Floats are rejected on purpose: they would silently bring rounding into
    an exact pipeline.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational literal")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"invalid rational literal {value!r}") from exc
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def fmt_rat(x: Fraction) -> str:
    """Serialize as ``"p/q"`` with the sign on ``p`` (``3`` becomes ``"3/1"``)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def qpoch(x: RatLike, q: RatLike, n: int) -> Fraction:
    """The q-Pochhammer product ``(x|q)_n = prod_{k<n} (1 - x q^k)``."""
    if n < 0:
        raise ValueError("qpoch order must be nonnegative")
    x, q = to_rat(x), to_rat(q)
    out = Fraction(1)
    term = x
    for _ in range(n):
        out *= 1 - term
        term *= q
    return out


def qpoch_multi(xs, q: RatLike, n: int) -> Fraction:
    """Product of ``(x|q)_n`` over every ``x`` in ``xs``."""
    out = Fraction(1)
    for x in xs:
        out *= qpoch(x, q, n)
    return out


def poch(x: RatLike, n: int) -> Fraction:
    """Rising factorial ``(x)_n = x (x+1) ... (x+n-1)``."""
    if n < 0:
        raise ValueError("poch order must be nonnegative")
    x = to_rat(x)
    out = Fraction(1)
    for k in range(n):
        out *= x + k
    return out


@dataclass(frozen=True)
class ParamSet:
    """A specialized parameter tuple ``(a, b, c, d, q)``.

    ``t0 = -cd/q`` and ``t1 = -ab`` are derived on demand.
    """

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    q: Fraction

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d", "q"):
            object.__setattr__(self, name, to_rat(getattr(self, name)))
        if self.q in (0, 1, -1):
            raise NonGenericError(f"q must avoid 0, 1 and -1 (got {fmt_rat(self.q)})")
        for name in ("a", "b", "c", "d"):
            if getattr(self, name) == 0:
                raise NonGenericError(f"parameter {name} must be nonzero")

    @classmethod
    def of(cls, a: RatLike, b: RatLike, c: RatLike, d: RatLike, q: RatLike) -> "ParamSet":
        return cls(to_rat(a), to_rat(b), to_rat(c), to_rat(d), to_rat(q))

    @property
    def t0(self) -> Fraction:
        return -self.c * self.d / self.q

    @property
    def t1(self) -> Fraction:
        return -self.a * self.b

    def with_(self, **changes: RatLike) -> "ParamSet":
        return replace(self, **{k: to_rat(v) for k, v in changes.items()})

    def as_dict(self) -> dict[str, str]:
        return {k: fmt_rat(getattr(self, k)) for k in ("a", "b", "c", "d", "q")}

    def __str__(self) -> str:
        return "(" + ", ".join(f"{k}={v}" for k, v in self.as_dict().items()) + ")"


def _scan_factors(p: ParamSet, depth: int) -> Iterator[tuple[str, Fraction]]:
    a, b, c, d, q = p.a, p.b, p.c, p.d, p.q
    ab, cd = a * b, c * d
    abcd = ab * cd
    yield "ab", ab
    yield "cd", cd
    qk = Fraction(1)
    for k in range(4 * depth + 5):
        if k >= 1:
            yield f"q^{k}-1", qk - 1
        yield f"ab*q^{k}-1", ab * qk - 1
        yield f"cd*q^{k}-1", cd * qk - 1
        yield f"abcd*q^{k}-1", abcd * qk - 1
        yield f"abcd*q^{k - 1}-1", abcd * qk / q - 1
        qk *= q


def genericity_failure(p: ParamSet, depth: int) -> str | None:
    """Name of the first vanishing denominator factor, or ``None``."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    for name, value in _scan_factors(p, depth):
        if value == 0:
            return name
    return None


def is_generic(p: ParamSet, depth: int) -> bool:
    """True when no scanned denominator factor vanishes up to ``4*depth+4``."""
    return genericity_failure(p, depth) is None


def require_generic(p: ParamSet, depth: int) -> None:
    bad = genericity_failure(p, max(depth, 1))
    if bad is not None:
        raise NonGenericError(f"non-generic parameters {p}: factor {bad} vanishes")
