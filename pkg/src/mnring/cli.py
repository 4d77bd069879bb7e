"""Command-line front end.

Exit codes: 0 success, 1 mathematical failure (division by zero, no exact
inverse, a failing check), 2 usage error (bad flags, syntax, unknown atom).
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from . import crossed as cr
from . import serialize
from .expr import MODES, EvalError, ParseError, Session, evaluate, format_value
from .laurent import format_fraction
from .numfield import PrimeBasis, StructureError
from .series import NotInvertibleError, TruncatedSeries, commutator, series_inv
from .verify import ConfigError, VerifyConfig, run_all


class UsageError(Exception):
    pass


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mode", choices=MODES, default="crossed-L")
    parser.add_argument("--level", type=int, default=None)
    parser.add_argument("--primes", default=None, help="comma-separated increasing primes, e.g. 2,3,5")
    parser.add_argument("--budget", type=int, default=8, help="series inversion iteration count")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--format", choices=("text", "structured"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mnring", description="Exact arithmetic in twisted Malcev-Neumann series rings"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, nargs, helptext in [
        ("eval", 1, "evaluate an expression to normal form"),
        ("inv", 1, "inverse of an expression"),
        ("comm", 2, "commutator A B A^-1 B^-1"),
        ("central", 1, "is the element central"),
        ("norm", 1, "regular norm (crossed modes)"),
        ("witness", 1, "indices i whose sqrt(p_i) does not commute with the element"),
    ]:
        p = sub.add_parser(name, help=helptext)
        p.add_argument("exprs", nargs=nargs, metavar="EXPR")
        _common(p)
    p = sub.add_parser("dim", help="dimension over the center")
    _common(p)
    p = sub.add_parser("center-basis", help="basis of the center over the coefficient field")
    _common(p)
    p = sub.add_parser("check", help="run the verification suite")
    p.add_argument("--only", action="append", default=[], help="check id (repeatable)")
    p.add_argument("--scale", type=float, default=1.0, help="multiply default sample counts")
    _common(p)
    return parser


def make_session(args) -> Session:
    primes = args.primes or os.environ.get("MNRING_PRIMES")
    level = args.level
    if level is None and os.environ.get("MNRING_LEVEL"):
        level = int(os.environ["MNRING_LEVEL"])
    try:
        basis = PrimeBasis(tuple(int(p) for p in primes.split(","))) if primes else None
    except ValueError as exc:
        raise UsageError(f"bad --primes: {exc}") from exc
    if level is None:
        level = basis.level if basis is not None else 2
    try:
        return Session(args.mode, level, basis, args.budget, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit_element(value, session: Session, structured: bool) -> str:
    if structured:
        rec = serialize.element_record(value)
        rec["mode"] = session.mode
        return serialize.dumps(rec)
    text = format_value(value)
    if isinstance(value, TruncatedSeries) and value.exact_below is not None:
        text += f"\n# exact below {value.exact_below}"
    return text


def _emit_result(session: Session, result, structured: bool, text: str) -> str:
    if structured:
        rec = serialize.header(session.mode, session.level, session.primes)
        rec["result"] = result
        return serialize.dumps(rec)
    return text


def _crossed_only(session: Session, command: str) -> None:
    if session.mode == "series":
        raise UsageError(f"{command} needs a crossed mode (--mode crossed-L or crossed-R)")


def run(args) -> tuple[int, str]:
    structured = args.format == "structured"
    if args.command == "check":
        try:
            config = VerifyConfig(seed=args.seed, level=args.level, scale=args.scale, only=tuple(args.only))
        except ConfigError as exc:
            if structured:
                return 2, serialize.dumps({"error": str(exc)})
            raise UsageError(str(exc)) from exc
        reports = run_all(config)
        if structured:
            out = "\n".join(r.to_json() for r in reports)
        else:
            out = "\n".join(r.line() for r in reports)
            failed = [r for r in reports if not r.passed]
            out += f"\n{len(reports) - len(failed)}/{len(reports)} checks passed"
        return (0 if all(r.passed for r in reports) else 1), out

    session = make_session(args)

    if args.command == "dim":
        d = cr.dim_over_center(session.model)
        return 0, _emit_result(session, d, structured, str(d))

    if args.command == "center-basis":
        _crossed_only(session, "center-basis")
        basis = cr.center_basis(session.model)
        if structured:
            return 0, _emit_result(session, [serialize.crossed_record(b, session.mode) for b in basis], True, "")
        return 0, "\n".join(str(b) for b in basis)

    values = [evaluate(session.parse(text), session) for text in args.exprs]

    if args.command == "eval":
        return 0, _emit_element(values[0], session, structured)

    if args.command == "inv":
        v = values[0]
        if session.mode == "series":
            if not v.is_exact:
                raise EvalError("cannot invert a truncated value")
            if v.body.is_zero():
                raise EvalError("cannot invert zero")
            result = series_inv(v.body, session.budget, window=max(v.window, v.body.max_index()))
        else:
            if v.is_zero():
                raise EvalError("cannot invert zero")
            result = cr.crossed_inv(v)
        return 0, _emit_element(result, session, structured)

    if args.command == "comm":
        a, b = values
        if session.mode == "series":
            if not (a.is_exact and b.is_exact):
                raise EvalError("commutator of truncated values")
            result = TruncatedSeries.exact(commutator(a.body, b.body), session.level)
        else:
            if a.is_zero() or b.is_zero():
                raise EvalError("commutator with zero")
            result = cr.crossed_commutator(a, b)
        return 0, _emit_element(result, session, structured)

    _crossed_only(session, args.command)
    v = values[0]
    if args.command == "central":
        flag = cr.is_central(v)
        return 0, _emit_result(session, flag, structured, "true" if flag else "false")
    if args.command == "norm":
        n = cr.regular_norm(v)
        return 0, _emit_result(session, serialize.fraction_record(n), structured, format_fraction(n))
    if args.command == "witness":
        w = sorted(cr.noncommuting_witnesses(v))
        return 0, _emit_result(session, w, structured, "{" + ", ".join(map(str, w)) + "}")
    raise UsageError(f"unknown command {args.command}")  # pragma: no cover


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, out = run(args)
    except (UsageError, ParseError, StructureError) as exc:
        print(f"mnring: error: {exc}", file=sys.stderr)
        return 2
    except (EvalError, ZeroDivisionError, NotInvertibleError) as exc:
        print(f"mnring: math error: {exc}", file=sys.stderr)
        return 1
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
