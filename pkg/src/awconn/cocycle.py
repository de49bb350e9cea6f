"""Co-cycle checks for transition matrices along parameter chains.

For a chain ``x -> y -> z`` of values of the shifted slot, changing basis
twice must agree with changing once:

    T(x, z) = T(y, z) @ T(x, y).

The discrete version uses the chain ``x, x q^p, x q^{p+1}``, where the middle
factor ``T(x q^p, x q^{p+1})`` is banded, and each entry of the product
collapses to a sum of at most three terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .arith import NonGenericError, ParamSet, RatLike, fmt_rat, to_rat
from .connection import (
    ShiftKind,
    ShiftSpec,
    TransitionMatrix,
    iter_entries,
    shift_failure,
    tau_sigma_closed,
    transition_matrix_closed,
    transition_matrix_oracle,
)
from .laurent import zz_position

__all__ = [
    "CocycleInstance",
    "check_discrete_cocycle",
    "check_block_identities",
    "check_banded",
    "check_codeg1_additivity",
    "check_continuous_cocycle",
    "ratio_lemma_records",
]


@dataclass(frozen=True)
class CocycleInstance:
    """The chain ``x, x q^p, x q^{p+1}`` for the slot named by ``kind``."""

    kind: ShiftKind
    base: ParamSet
    p: int
    N: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", ShiftKind(self.kind))
        if self.p < 0:
            raise ValueError("p must be nonnegative")

    @property
    def x(self) -> Fraction:
        return getattr(self.base, self.kind.value)

    def spec(self, i: int, j: int) -> ShiftSpec:
        """Shift from ``x q^i`` to ``x q^j``."""
        q = self.base.q
        src = self.base.with_(**{self.kind.value: self.x * q**i})
        return ShiftSpec(self.kind, src, self.x * q**j)

    @property
    def lo(self) -> ShiftSpec:
        return self.spec(0, self.p)

    @property
    def mid(self) -> ShiftSpec:
        return self.spec(self.p, self.p + 1)

    @property
    def full(self) -> ShiftSpec:
        return self.spec(0, self.p + 1)

    def failure(self) -> str | None:
        for name, s in (("lo", self.lo), ("mid", self.mid), ("full", self.full)):
            bad = shift_failure(s, self.N + 1)
            if bad is not None:
                return f"{name}: {bad}"
        return None

    def require(self) -> None:
        bad = self.failure()
        if bad is not None:
            raise NonGenericError(f"non-generic chain on {self.base}: {bad}")


def check_discrete_cocycle(inst: CocycleInstance) -> bool:
    """``T(x, x q^{p+1}) == T(x q^p, x q^{p+1}) @ T(x, x q^p)`` exactly."""
    inst.require()
    lo = transition_matrix_closed(inst.lo, inst.N)
    mid = transition_matrix_closed(inst.mid, inst.N)
    full = transition_matrix_closed(inst.full, inst.N)
    return full == mid @ lo


def check_banded(spec: ShiftSpec, N: int, width: int = 2) -> bool:
    """Entries more than ``width`` zig-zag steps above the diagonal vanish."""
    m = transition_matrix_closed(spec, N)
    for r, s in iter_entries(N):
        if zz_position(s) - zz_position(r) > width and m.entry(r, s) != 0:
            return False
    return True


def _record(identity: str, k: int, n: int, p: int, ok: bool) -> dict:
    return {"identity": identity, "k": k, "n": n, "p": p, "status": "pass" if ok else "fail"}


def check_block_identities(inst: CocycleInstance) -> list[dict]:
    """Scalar form of the co-cycle, block by block, for every ``(k, n)``.

    Generic cells are three-term sums over the band of the middle matrix.
    Edge cells reduce to ``1 = 1 * 1`` on the diagonal, or to additivity of
    the codegree-one entries.  One extra record per instance confirms the
    band structure of the middle matrix.
    """
    inst.require()
    N, p = inst.N, inst.p
    lo = lambda r, s: tau_sigma_closed(r, s, inst.lo)  # noqa: E731
    mid = lambda r, s: tau_sigma_closed(r, s, inst.mid)  # noqa: E731
    full = lambda r, s: tau_sigma_closed(r, s, inst.full)  # noqa: E731

    out: list[dict] = []
    for n in range(N + 1):
        for k in range(n + 1):
            # T00: tau_{k,n}
            if k < n:
                rhs = mid(k, k) * lo(k, n) + mid(k, k + 1) * lo(k + 1, n) + mid(k, -(k + 1)) * lo(-(k + 1), n)
                out.append(_record("T00", k, n, p, full(k, n) == rhs))
            else:
                out.append(_record("T00", k, n, p, full(k, k) == mid(k, k) * lo(k, k) == 1))
        for k in range(n + 1):
            # T01: sigma_{k,-(n+1)}; needs n + 1 <= N for the column to exist
            if n + 1 > N:
                break
            s = -(n + 1)
            if k < n:
                rhs = mid(k, k) * lo(k, s) + mid(k, k + 1) * lo(k + 1, s) + mid(k, -(k + 1)) * lo(-(k + 1), s)
            else:
                rhs = mid(k, s) + lo(k, s)
            out.append(_record("T01", k, n, p, full(k, s) == rhs))
        for k in range(n):
            # T10: sigma_{-(k+1),n}
            r = -(k + 1)
            if k < n - 1:
                rhs = mid(r, r) * lo(r, n) + mid(r, k + 1) * lo(k + 1, n) + mid(r, -(k + 2)) * lo(-(k + 2), n)
            else:
                rhs = mid(r, n) + lo(r, n)
            out.append(_record("T10", k, n, p, full(r, n) == rhs))
        for k in range(n + 1):
            # T11: tau_{-(k+1),-(n+1)}
            if n + 1 > N:
                break
            r, s = -(k + 1), -(n + 1)
            if k < n:
                rhs = mid(r, r) * lo(r, s) + mid(r, k + 1) * lo(k + 1, s) + mid(r, -(k + 2)) * lo(-(k + 2), s)
                out.append(_record("T11", k, n, p, full(r, s) == rhs))
            else:
                out.append(_record("T11", k, n, p, full(r, r) == mid(r, r) * lo(r, r) == 1))
    out.append(_record("banded-mid", -1, N, p, check_banded(inst.mid, N)))
    return out


def check_codeg1_additivity(kind: ShiftKind | str, base: ParamSet, x: RatLike, y: RatLike, z: RatLike, N: int) -> bool:
    """Codegree-one entries add along any chain ``x -> y -> z``.

    ``T[n, -(n+1)](x, z) = T[n, -(n+1)](y, z) + T[n, -(n+1)](x, y)`` and the
    same for ``T[-(n+1), n+1]``, for ``0 <= n < N``.
    """
    kind = ShiftKind(kind)
    x, y, z = to_rat(x), to_rat(y), to_rat(z)
    slot = kind.value
    xz = ShiftSpec(kind, base.with_(**{slot: x}), z)
    yz = ShiftSpec(kind, base.with_(**{slot: y}), z)
    xy = ShiftSpec(kind, base.with_(**{slot: x}), y)
    for s in (xz, yz, xy):
        bad = shift_failure(s, N)
        if bad is not None:
            raise NonGenericError(f"non-generic triple: {bad}")
    for n in range(N):
        for r, s in ((n, -(n + 1)), (-(n + 1), n + 1)):
            if tau_sigma_closed(r, s, xz) != tau_sigma_closed(r, s, yz) + tau_sigma_closed(r, s, xy):
                return False
    return True


def check_continuous_cocycle(kind: ShiftKind | str, base: ParamSet, x: RatLike, y: RatLike, z: RatLike, N: int) -> bool:
    """``T(x, z) == T(y, z) @ T(x, y)`` using oracle matrices only."""
    kind = ShiftKind(kind)
    slot = kind.value
    x, y, z = to_rat(x), to_rat(y), to_rat(z)
    xz = ShiftSpec(kind, base.with_(**{slot: x}), z)
    yz = ShiftSpec(kind, base.with_(**{slot: y}), z)
    xy = ShiftSpec(kind, base.with_(**{slot: x}), y)
    return transition_matrix_oracle(xz, N) == transition_matrix_oracle(yz, N) @ transition_matrix_oracle(xy, N)


# -- ratio lemmas ------------------------------------------------------------


def _p1(x: Fraction) -> Fraction:
    return 1 - x


Ratio = tuple[int, int, int, int, Fraction, Fraction]  # r_num, s_num, r_den, s_den, rhs_num, rhs_den


def _ratios_upper_a(p: ParamSet, k: int, n: int, pp: int) -> list[Ratio]:
    a, b, c, d, q = p.a, p.b, p.c, p.d, p.q
    bc, bd, cd, abcd = b * c, b * d, c * d, a * b * c * d
    qk, qp1 = q**k, q ** -(pp + 1)
    return [
        (k, n, -(k + 1), n, q ** (n - k) * _p1(bc * qk) * _p1(bd * qk) * _p1(qp1), b * c * d * qk * qk * _p1(q ** (n - k)) * _p1(q ** (n - k - pp - 1))),
        (k, -(n + 1), -(k + 1), -(n + 1), a * q ** (n - k + pp + 1) * _p1(bc * qk) * _p1(bd * qk) * _p1(qp1), _p1(abcd * q ** (n + k)) * _p1(abcd * q ** (n + k + pp + 1))),
        (-(k + 1), n, k + 1, n, abcd * q ** (n + k + pp + 1) * _p1(qk * q) * _p1(cd * qk) * _p1(qp1), _p1(abcd * q ** (n + k)) * _p1(abcd * q ** (n + k + pp + 1))),
        (-(k + 1), -(n + 1), k + 1, -(n + 1), q ** (n - k) * _p1(qk * q) * _p1(cd * qk) * _p1(qp1), _p1(q ** (n - k)) * _p1(q ** (n - k - pp - 1))),
    ]


def _ratios_same_a(p: ParamSet, k: int, n: int, pp: int) -> list[Ratio]:
    a, b, c, d, q = p.a, p.b, p.c, p.d, p.q
    bc, bd, cd, abcd = b * c, b * d, c * d, a * b * c * d
    qk = q**k
    return [
        (k, n, -(k + 1), n, _p1(bc * qk) * _p1(bd * qk) * _p1(abcd * q ** (n + k + pp)), b * c * d * qk * qk * _p1(q ** (n - k)) * _p1(abcd * q ** (2 * k + pp))),
        (k, -(n + 1), -(k + 1), -(n + 1), a * q**pp * _p1(bc * qk) * _p1(bd * qk) * _p1(q ** (n - k - pp)), _p1(abcd * q ** (n + k)) * _p1(abcd * q ** (2 * k + pp))),
        (-(k + 1), n, k + 1, n, abcd * q ** (2 * k + pp + 1) * _p1(qk * q) * _p1(q ** (n - k - pp - 1)) * _p1(cd * qk), _p1(abcd * q ** (n + k)) * _p1(abcd * q ** (2 * k + pp + 1))),
        (-(k + 1), -(n + 1), k + 1, -(n + 1), _p1(qk * q) * _p1(cd * qk) * _p1(abcd * q ** (n + k + pp + 1)), _p1(q ** (n - k)) * _p1(abcd * q ** (2 * k + pp + 1))),
    ]


def _ratios_upper_c(p: ParamSet, k: int, n: int, pp: int) -> list[Ratio]:
    a, b, c, d, q = p.a, p.b, p.c, p.d, p.q
    ab, ad, bd, abcd = a * b, a * d, b * d, a * b * c * d
    qk, qp1 = q**k, q ** -(pp + 1)
    return [
        (k, n, -(k + 1), n, -q ** (n - 2 * k) * _p1(ad * qk) * _p1(bd * qk) * _p1(qp1), d * _p1(q ** (n - k)) * _p1(q ** (n - k - pp - 1))),
        (k, -(n + 1), -(k + 1), -(n + 1), -a * b * c * q ** (n + pp + 1) * _p1(ad * qk) * _p1(bd * qk) * _p1(qp1), _p1(abcd * q ** (n + k)) * _p1(abcd * q ** (n + k + pp + 1))),
        (-(k + 1), n, k + 1, n, -c * d * q ** (n + pp) * _p1(qk * q) * _p1(ab * qk * q) * _p1(qp1), _p1(abcd * q ** (n + k)) * _p1(abcd * q ** (n + k + pp + 1))),
        (-(k + 1), -(n + 1), k + 1, -(n + 1), -q ** (n - 2 * k - 1) * _p1(qk * q) * _p1(ab * qk * q) * _p1(qp1), ab * _p1(q ** (n - k)) * _p1(q ** (n - k - pp - 1))),
    ]


def _ratios_same_c(p: ParamSet, k: int, n: int, pp: int) -> list[Ratio]:
    a, b, c, d, q = p.a, p.b, p.c, p.d, p.q
    ab, ad, bd, abcd = a * b, a * d, b * d, a * b * c * d
    qk = q**k
    return [
        (k, n, -(k + 1), n, -_p1(ad * qk) * _p1(bd * qk) * _p1(abcd * q ** (n + k + pp)), d * qk * _p1(q ** (n - k)) * _p1(abcd * q ** (2 * k + pp))),
        (k, -(n + 1), -(k + 1), -(n + 1), -a * b * c * q ** (k + pp) * _p1(ad * qk) * _p1(bd * qk) * _p1(q ** (n - k - pp)), _p1(abcd * q ** (n + k)) * _p1(abcd * q ** (2 * k + pp))),
        (-(k + 1), n, k + 1, n, -c * d * q ** (k + pp) * _p1(qk * q) * _p1(q ** (n - k - pp - 1)) * _p1(ab * qk * q), _p1(abcd * q ** (n + k)) * _p1(abcd * q ** (2 * k + pp + 1))),
        (-(k + 1), -(n + 1), k + 1, -(n + 1), -_p1(qk * q) * _p1(ab * qk * q) * _p1(abcd * q ** (n + k + pp + 1)), ab * qk * q * _p1(q ** (n - k)) * _p1(abcd * q ** (2 * k + pp + 1))),
    ]


_LEMMAS: dict[tuple[ShiftKind, str], Callable[[ParamSet, int, int, int], list[Ratio]]] = {
    (ShiftKind.A, "upper"): _ratios_upper_a,
    (ShiftKind.A, "same"): _ratios_same_a,
    (ShiftKind.C, "upper"): _ratios_upper_c,
    (ShiftKind.C, "same"): _ratios_same_c,
}


def ratio_lemma_records(kind: ShiftKind | str, base: ParamSet, p_max: int, n_max: int) -> list[dict]:
    """Entry ratios along ``x, x q^p, x q^{p+1}`` for ``p <= p_max``, ``k < n <= n_max``.

    ``upper`` lemmas divide an entry of ``T(x, x q^{p+1})`` by one of
    ``T(x, x q^p)``; ``same`` lemmas divide two entries of ``T(x, x q^p)``.
    A ratio whose denominator vanishes at the chosen point is recorded as
    ``skipped``.
    """
    kind = ShiftKind(kind)
    tag = "URT" if kind is ShiftKind.A else "URTC"
    tag_same = "VRT" if kind is ShiftKind.A else "VRTC"
    out = []
    for pp in range(p_max + 1):
        inst = CocycleInstance(kind, base, pp, n_max + 1)
        inst.require()
        lo, full = inst.lo, inst.full
        for n in range(1, n_max + 1):
            for k in range(n):
                for family, name, num_spec in (("upper", tag, full), ("same", tag_same, lo)):
                    for idx, (rn, sn, rd, sd, rhs_num, rhs_den) in enumerate(_LEMMAS[(kind, family)](base, k, n, pp), start=1):
                        den = tau_sigma_closed(rd, sd, lo)
                        if den == 0 or rhs_den == 0:
                            status = "skipped"
                        else:
                            ok = tau_sigma_closed(rn, sn, num_spec) / den == rhs_num / rhs_den
                            status = "pass" if ok else "fail"
                        out.append({"identity": f"{name}.{idx}", "k": k, "n": n, "p": pp, "status": status})
    return out


def pochneg_holds(q: RatLike, d: int, e: int, f: int, g: int, p: int) -> bool:
    """The three elementary rewrites of ``1 - q^m`` under index shifts."""
    q = to_rat(q)
    ok = q**d * (1 - q**e) == (1 - q ** (d + e)) - (1 - q**d)
    ok &= (1 - q ** (f - g)) == q**-g * ((1 - q**f) - (1 - q**g))
    ok &= (1 - q**-p) == -(q**-p) * (1 - q**p)
    return ok


def describe(inst: CocycleInstance) -> dict[str, str]:
    return {"shift": inst.kind.value, "x": fmt_rat(inst.x), "p": str(inst.p), "N": str(inst.N)}
