"""Command-line front end: ``awconn {epoly,ppoly,connect,verify}``.

Exit codes: 0 success, 1 a verification check failed, 2 bad arguments,
3 non-generic parameters, 4 no generic random tuple found.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .arith import NonGenericError, ParamSet, require_generic, to_rat
from .connection import ShiftKind, ShiftSpec, transition_matrix_closed, transition_matrix_oracle
from .polys import hecke_symmetrize, nonsymmetric_E
from .verify import SUITES, GenericityExhausted, report_json, run_verify

N_CAP = 12
EXIT_FAIL, EXIT_USAGE, EXIT_NONGENERIC, EXIT_EXHAUSTED = 1, 2, 3, 4

# Defaults let `connect --shift a --oracle` run without parameter flags.
DEFAULTS = {"a": "2", "b": "3", "c": "5", "d": "7", "q": "1/2", "e": "11", "g": "13"}


_RAT_TEXT = re.compile(r"[+-]?\d+(/\d+)?")


def _rat(text: str) -> Fraction:
    if not _RAT_TEXT.fullmatch(text.strip()):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r} (expected p/q or an integer)")
    try:
        return to_rat(text)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _capped(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if abs(value) > N_CAP:
        raise argparse.ArgumentTypeError(f"|{value}| exceeds the hard cap {N_CAP}")
    return value


def _nonneg_capped(text: str) -> int:
    value = _capped(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _add_params(sp: argparse.ArgumentParser, extra: tuple[str, ...] = ()) -> None:
    for name in ("a", "b", "c", "d", "q") + extra:
        sp.add_argument(f"--{name}", type=_rat, default=Fraction(DEFAULTS[name]), metavar="RAT")


def _add_out(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--out", metavar="PATH", help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="awconn", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("epoly", help="nonsymmetric polynomial E_r as exponent->coefficient JSON")
    _add_params(sp)
    sp.add_argument("--r", type=_capped, required=True)
    _add_out(sp)

    sp = sub.add_parser("ppoly", help="symmetric polynomial P_n as exponent->coefficient JSON")
    _add_params(sp)
    sp.add_argument("--n", type=_nonneg_capped, required=True)
    _add_out(sp)

    sp = sub.add_parser("connect", help="transition matrix for a single-parameter shift")
    _add_params(sp, ("e", "g"))
    sp.add_argument("--shift", choices=("a", "c"), required=True)
    sp.add_argument("--N", type=_nonneg_capped, default=6)
    sp.add_argument("--oracle", action="store_true", help="also compute the basis-expansion oracle and diff")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    _add_out(sp)

    sp = sub.add_parser("verify", help="run a seeded verification suite")
    sp.add_argument("suite", choices=SUITES + ("all",))
    sp.add_argument("--N", type=_nonneg_capped, default=6)
    sp.add_argument("--M", type=_positive, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--allow-negative", action="store_true", help="sample negative numerators too")
    _add_out(sp)
    return parser


def _params(args: argparse.Namespace) -> ParamSet:
    return ParamSet(args.a, args.b, args.c, args.d, args.q)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _poly_json(poly) -> str:
    return json.dumps(poly.to_json_dict(), separators=(",", ":")) + "\n"


def cmd_epoly(args: argparse.Namespace) -> int:
    _emit(_poly_json(nonsymmetric_E(args.r, _params(args)).poly), args.out)
    return 0


def cmd_ppoly(args: argparse.Namespace) -> int:
    p = _params(args)
    require_generic(p, args.n + 1)
    _emit(_poly_json(hecke_symmetrize(args.n, p)), args.out)
    return 0


def cmd_connect(args: argparse.Namespace) -> int:
    kind = ShiftKind(args.shift)
    value = args.e if kind is ShiftKind.A else args.g
    spec = ShiftSpec(kind, _params(args), value)
    closed = transition_matrix_closed(spec, args.N)
    oracle = transition_matrix_oracle(spec, args.N) if args.oracle else None
    summary = None
    if oracle is not None:
        summary = f"{len(closed.mismatches(oracle))} mismatches"
    if args.format == "csv":
        text = closed.to_csv()
        if summary is not None:
            print(summary, file=sys.stderr)
    else:
        if oracle is None:
            payload = closed.to_json_dict()
        else:
            payload = {
                "closed": closed.to_json_dict(),
                "oracle": oracle.to_json_dict(),
                "mismatches": [f"{r},{s}" for r, s in closed.mismatches(oracle)],
                "summary": summary,
            }
        text = json.dumps(payload, indent=2) + "\n"
    _emit(text, args.out)
    return 0 if summary in (None, "0 mismatches") else EXIT_FAIL


def cmd_verify(args: argparse.Namespace) -> int:
    report = run_verify(args.suite, args.N, args.M, args.seed, args.allow_negative)
    _emit(report_json(report), args.out)
    return 0 if report["pass"] else EXIT_FAIL


_COMMANDS = {"epoly": cmd_epoly, "ppoly": cmd_ppoly, "connect": cmd_connect, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except NonGenericError as exc:
        print(f"awconn: {exc}", file=sys.stderr)
        return EXIT_NONGENERIC
    except GenericityExhausted as exc:
        print(f"awconn: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED


if __name__ == "__main__":
    sys.exit(main())
