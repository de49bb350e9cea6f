"""Seeded verification suites and the JSON report they produce.

Every random tuple is drawn from a single ``random.Random(seed)`` stream in a
fixed order, so a seed fully determines the report, byte for byte.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .arith import NonGenericError, ParamSet, fmt_rat, genericity_failure
from .classical import (
    connection_oracle,
    gegenbauer_connection,
    gegenbauer_poly,
    jacobi_connection,
    jacobi_poly,
)
from .cocycle import (
    CocycleInstance,
    check_block_identities,
    check_codeg1_additivity,
    check_continuous_cocycle,
    check_discrete_cocycle,
    ratio_lemma_records,
)
from .connection import (
    ShiftKind,
    ShiftSpec,
    iter_entries,
    low_codegree_transition_check,
    nonsym_d,
    shift_failure,
    specialization_check,
    sym_conn_coeff,
    symmetric_connection_check,
    tau_sigma_closed,
    transition_matrix_closed,
    transition_matrix_oracle,
)
from .laurent import LaurentPoly, basis_f, basis_fq, basis_h, basis_hq, check_basis_conversion
from .operators import OperatorTag, apply, check_filtration, check_quadratic
from .polys import (
    appendixB_failure,
    check_hecke,
    check_low_codegree,
    check_to_from_q,
    check_two_projection,
    mu_tilde,
    nonsymmetric_E,
    verify_appendixB_pair,
)

__all__ = ["SUITES", "GenericityExhausted", "Sampler", "run_verify", "report_json"]

SUITES = ("eigen", "connection-a", "connection-c", "cocycle", "symmetric", "classical", "appendixB")
MAX_RESAMPLES = 1000
OPERATOR_DEGREE = 10  # operator identities are cheap; always test |k| <= 10


class GenericityExhausted(RuntimeError):
    """No generic tuple was found within the resample budget."""


@dataclass
class Sampler:
    seed: int
    allow_negative: bool = False
    tuples: list[dict] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.rng = random.Random(self.seed)

    def value(self) -> Fraction:
        num = self.rng.randint(1, 97)
        den = self.rng.randint(1, 97)
        if self.allow_negative and self.rng.random() < 0.5:
            num = -num
        return Fraction(num, den)

    def _record(self, kind: str, values: dict[str, Fraction]) -> str:
        tid = f"t{len(self.tuples)}"
        self.tuples.append({"id": tid, "kind": kind, **{k: fmt_rat(v) for k, v in values.items()}})
        return tid

    def params(self, depth: int, extra: Callable[[ParamSet], str | None] | None = None) -> tuple[str, ParamSet]:
        for _ in range(MAX_RESAMPLES):
            vals = [self.value() for _ in range(5)]
            try:
                p = ParamSet(*vals)
            except NonGenericError:
                continue
            if genericity_failure(p, depth) is None and (extra is None or extra(p) is None):
                return self._record("params", dict(zip("abcdq", vals))), p
        raise GenericityExhausted(f"no generic tuple after {MAX_RESAMPLES} resamples")

    def shift(self, kind: ShiftKind, depth: int, extra: Callable[[ShiftSpec], str | None] | None = None) -> tuple[str, ShiftSpec]:
        for _ in range(MAX_RESAMPLES):
            vals = [self.value() for _ in range(6)]
            try:
                spec = ShiftSpec(kind, ParamSet(*vals[:5]), vals[5])
            except NonGenericError:
                continue
            if shift_failure(spec, depth) is None and (extra is None or extra(spec) is None):
                names = dict(zip("abcdq", vals[:5]))
                names["e" if kind is ShiftKind.A else "g"] = vals[5]
                return self._record(f"shift-{kind.value}", names), spec
        raise GenericityExhausted(f"no generic shift tuple after {MAX_RESAMPLES} resamples")

    def rationals(self, names: tuple[str, ...], label: str, ok: Callable[[list[Fraction]], bool]) -> tuple[str, list[Fraction]]:
        for _ in range(MAX_RESAMPLES):
            vals = [self.value() for _ in names]
            if ok(vals):
                return self._record(label, dict(zip(names, vals))), vals
        raise GenericityExhausted(f"no admissible {label} tuple after {MAX_RESAMPLES} resamples")


class _Report:
    def __init__(self) -> None:
        self.checks: list[dict] = []

    def add(self, name: str, params: dict, ok: bool, detail) -> None:
        self.checks.append({"name": name, "params": params, "status": "pass" if ok else "fail", "detail": detail})


def _summary(records: list[dict]) -> tuple[bool, dict]:
    counts: dict[str, int] = {}
    for r in records:
        counts[r["status"]] = counts.get(r["status"], 0) + 1
    failed = [r for r in records if r["status"] == "fail"]
    return not failed, {"counts": dict(sorted(counts.items())), "failed": failed}


# -- suites ------------------------------------------------------------------


def _suite_eigen(s: Sampler, rep: _Report, N: int, M: int) -> None:
    for _ in range(M):
        tid, p = s.params(N + 1)
        deg = max(N, OPERATOR_DEGREE)
        for op in (OperatorTag.T0t, OperatorTag.T1t):
            rep.add(f"eigen/quadratic-{op.value}", {"tuple": tid, "degree": deg}, check_quadratic(op, p, deg), "")
        bad = []
        for n in range(1, deg + 1):
            q = p.q
            if apply(OperatorTag.U0t, basis_fq(n, p), p) != basis_hq(n + 1, p).scale(-p.c * p.d / q) + basis_fq(n, p).scale(p.c + p.d):
                bad.append(f"U0 f_{n},q")
            if apply(OperatorTag.U0t, basis_hq(n, p), p) != basis_fq(n - 1, p).scale(q):
                bad.append(f"U0 h_{n},q")
            if apply(OperatorTag.T1t, basis_f(n), p) != basis_f(n).scale(-p.a * p.b):
                bad.append(f"T1 f_{n}")
            if apply(OperatorTag.T1t, basis_h(n), p) != basis_f(n).scale(-p.a * p.b) - basis_h(n) + basis_f(n - 1).scale(p.a + p.b):
                bad.append(f"T1 h_{n}")
        rep.add("eigen/basis-actions", {"tuple": tid, "n_max": deg}, not bad, ", ".join(bad))
        rep.add("eigen/filtration", {"tuple": tid, "n_max": deg}, check_filtration(p, deg), "")
        bad_u = []
        for k in range(-deg, deg + 1):
            m = LaurentPoly.monomial(k)
            x = m.shift(1)
            if apply(OperatorTag.U0t, m, p) != apply(OperatorTag.T0t, x, p) + x.scale(1 - p.t0):
                bad_u.append(k)
        rep.add("eigen/U0-factorization", {"tuple": tid, "degree": deg}, not bad_u, str(bad_u) if bad_u else "")
        cob = [n for n in range(1, deg + 1) if not check_basis_conversion(p, n)]
        rep.add("eigen/basis-conversion", {"tuple": tid, "n_max": deg}, not cob, str(cob) if cob else "")
        for r in range(-N, N + 1):
            E = nonsymmetric_E(r, p).poly
            ok = apply(OperatorTag.Yt, E, p) == E.scale(mu_tilde(r, p))
            rep.add("eigen/eigenvector", {"tuple": tid, "r": r}, ok, "")
            if r != 0:
                low = check_low_codegree(r, p)
                bad_low = [f"{n}/{f}" for n, f, ok in low if not ok]
                rep.add("eigen/low-codegree", {"tuple": tid, "r": r}, not bad_low, ", ".join(bad_low))
            rep.add("eigen/plain-vs-q-expansion", {"tuple": tid, "r": r}, check_to_from_q(r, p), "")


def _suite_connection(kind: ShiftKind) -> Callable[[Sampler, _Report, int, int], None]:
    def run(s: Sampler, rep: _Report, N: int, M: int) -> None:
        label = f"connection-{kind.value}"
        for _ in range(M):
            tid, spec = s.shift(kind, N + 2)
            closed = transition_matrix_closed(spec, N)
            oracle = transition_matrix_oracle(spec, N)
            mism = closed.mismatches(oracle)
            rep.add(f"{label}/closed-vs-oracle", {"tuple": tid, "N": N}, not mism, f"{len(mism)} mismatches")
            bad = [
                (r, c)
                for r, c in iter_entries(N)
                if tau_sigma_closed(r, c, spec) != nonsym_d(r, c, spec) * sym_conn_coeff(abs(r), abs(c), spec)
            ]
            rep.add(f"{label}/entry-equals-d-times-c", {"tuple": tid, "N": N}, not bad, f"{len(bad)} mismatches")
            low = [(n_, i) for n_, i, ok in low_codegree_transition_check(spec, N, oracle) if not ok]
            rep.add(f"{label}/low-codegree-differences", {"tuple": tid, "N": N}, not low, str(low) if low else "")
            sp = [(n_, i) for n_, i, ok in specialization_check(kind, spec.source, N) if not ok]
            rep.add(f"{label}/single-q-step", {"tuple": tid, "N": N}, not sp, str(sp) if sp else "")

    return run


def _chain_ok(kind: ShiftKind, N: int, p_max: int) -> Callable[[ParamSet], str | None]:
    def check(p: ParamSet) -> str | None:
        for pp in range(p_max + 1):
            bad = CocycleInstance(kind, p, pp, N).failure()
            if bad:
                return bad
        return None

    return check


def _suite_cocycle(s: Sampler, rep: _Report, N: int, M: int) -> None:
    p_max = 3
    n_ratio = min(N, 5)
    n_cont = min(N, 5)
    for kind in (ShiftKind.A, ShiftKind.C):
        for _ in range(M):
            tid, base = s.params(N + p_max + 2, _chain_ok(kind, N, p_max))
            for pp in range(p_max + 1):
                inst = CocycleInstance(kind, base, pp, N)
                params = {"tuple": tid, "shift": kind.value, "p": pp, "N": N}
                rep.add("cocycle/discrete", params, check_discrete_cocycle(inst), "")
                ok, detail = _summary(check_block_identities(inst))
                rep.add("cocycle/block-identities", params, ok, detail)
            ok, detail = _summary(ratio_lemma_records(kind, base, p_max, n_ratio))
            rep.add("cocycle/ratio-lemmas", {"tuple": tid, "shift": kind.value, "p_max": p_max, "n_max": n_ratio}, ok, detail)
            slot = kind.value

            def triple_ok(vals: list[Fraction], base=base, slot=slot) -> bool:
                x, y, z = vals
                for u, v in ((x, z), (y, z), (x, y)):
                    try:
                        spec = ShiftSpec(kind, base.with_(**{slot: u}), v)
                    except NonGenericError:
                        return False
                    if shift_failure(spec, N) is not None:
                        return False
                return True

            xid, (x, y, z) = s.rationals(("x", "y", "z"), f"triple-{slot}", triple_ok)
            params = {"tuple": tid, "triple": xid, "shift": slot, "N": N}
            rep.add("cocycle/codegree1-additivity", params, check_codeg1_additivity(kind, base, x, y, z, N), "")
            params = {"tuple": tid, "triple": xid, "shift": slot, "N": n_cont}
            rep.add("cocycle/continuous-oracle", params, check_continuous_cocycle(kind, base, x, y, z, n_cont), "")


def _suite_symmetric(s: Sampler, rep: _Report, N: int, M: int) -> None:
    for kind in (ShiftKind.A, ShiftKind.C):
        for _ in range(M):
            tid, spec = s.shift(kind, N + 2)
            rep.add(
                f"symmetric/shift-{kind.value}",
                {"tuple": tid, "N": N},
                symmetric_connection_check(spec, N),
                "P_n(source) = sum c_mn P_m(target) and gamma identities",
            )
            p = spec.source
            bad = [n for n in range(N + 1) if not check_hecke(n, p)]
            rep.add("symmetric/hecke-symmetrization", {"tuple": tid, "N": N}, not bad, str(bad) if bad else "")
            bad = [n for n in range(1, N + 1) if not check_two_projection(n, p)]
            rep.add("symmetric/two-dim-projection", {"tuple": tid, "N": N}, not bad, str(bad) if bad else "")


def _jacobi_ok(N: int) -> Callable[[list[Fraction]], bool]:
    def ok(vals: list[Fraction]) -> bool:
        _, al, be, _, nu = vals
        for k in range(N + 1):
            if (k + al + be + 1) == 0 or nu + k == 0:
                return False
        return True

    return ok


def _suite_classical(s: Sampler, rep: _Report, N: int, M: int) -> None:
    for _ in range(M):
        tid, (ga, al, be, lam, nu) = s.rationals(("gamma", "alpha", "beta", "lambda", "nu"), "classical", _jacobi_ok(2 * N + 2))
        for n in range(N + 1):
            c = jacobi_connection(n, ga, al, be)
            o = connection_oracle(jacobi_poly(n, ga, be), lambda k: jacobi_poly(k, al, be), n)
            rep.add("classical/jacobi", {"tuple": tid, "n": n}, c == o, "")
            c = gegenbauer_connection(n, lam, nu)
            o = connection_oracle(gegenbauer_poly(n, lam), lambda k: gegenbauer_poly(k, nu), n)
            rep.add("classical/gegenbauer", {"tuple": tid, "n": n}, c == o, "")
            unit = [Fraction(0)] * n + [Fraction(1)]
            rep.add("classical/jacobi-degenerate", {"tuple": tid, "n": n}, jacobi_connection(n, al, al, be) == unit, "")
            rep.add("classical/gegenbauer-degenerate", {"tuple": tid, "n": n}, gegenbauer_connection(n, nu, nu) == unit, "")


def _suite_appendixB(s: Sampler, rep: _Report, N: int, M: int) -> None:
    for _ in range(M):
        tid, p = s.params(N + 2, lambda p: appendixB_failure(p, N + 2))
        for n in range(N):
            rep.add("appendixB/inverse-pair", {"tuple": tid, "n": n}, verify_appendixB_pair(n, p), "")


_RUNNERS: dict[str, Callable[[Sampler, _Report, int, int], None]] = {
    "eigen": _suite_eigen,
    "connection-a": _suite_connection(ShiftKind.A),
    "connection-c": _suite_connection(ShiftKind.C),
    "cocycle": _suite_cocycle,
    "symmetric": _suite_symmetric,
    "classical": _suite_classical,
    "appendixB": _suite_appendixB,
}


def run_verify(suite: str, N: int, M: int, seed: int, allow_negative: bool = False) -> dict:
    """Run one suite (or ``all``) and return the report dictionary."""
    names = SUITES if suite == "all" else (suite,)
    for name in names:
        if name not in _RUNNERS:
            raise ValueError(f"unknown suite {name!r}")
    sampler = Sampler(seed, allow_negative)
    rep = _Report()
    for name in names:
        _RUNNERS[name](sampler, rep, N, M)
    return {
        "seed": seed,
        "tuples": sampler.tuples,
        "checks": rep.checks,
        "pass": all(c["status"] == "pass" for c in rep.checks),
    }


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"
