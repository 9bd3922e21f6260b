"""Command line frontend.

Subcommands: ``telescope`` (telescoper + certificate for a term),
``invert`` (recurrence for the Taylor coefficients of a compositional
inverse), ``verify`` (re-check a stored telescoper/certificate pair) and
``bench`` (the random benchmark family).  Output is plain text or, with
--json, the stable schema {"order", "coefficients", "degree",
"certificate"?, "wall_seconds"}.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .errors import (DivisionByZeroExpr, DomainMismatch, ExprSyntaxError,
                     HypertelError, InvalidInputForm, NotInvertibleSeries,
                     ReportDegenerate, UnknownVariable)
from .expr import format_expr, lower, parse_expr
from .inversion import (CSV_HEADER, bench_family, check_recurrence,
                        invert_recurrence, series_reversion)
from .poly import QRat
from .telescoping import (Telescoper, build_term, ensure_minimal, mixed_ct,
                          verify_telescoper)

EXIT_OK = 0
EXIT_INVALID_INPUT = 2
EXIT_VERIFY_FAILED = 3
EXIT_USAGE = 64
EXIT_PARSE = 65

_PARSE_ERRORS = (ExprSyntaxError, UnknownVariable, DomainMismatch,
                 DivisionByZeroExpr)


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def _lower_arg(src: str, target: str):
    return lower(parse_expr(src), target)


def _tel_payload(tel: Telescoper, cert, wall: float) -> dict:
    out = {
        "order": tel.order,
        "coefficients": [format_expr(c, var="n") for c in tel.cleared],
        "degree": tel.degree,
    }
    if cert is not None:
        out["certificate"] = format_expr(cert.Q)
    out["wall_seconds"] = wall
    return out


def _emit(payload: dict, as_json: bool, extra_lines=()):
    if as_json:
        print(json.dumps(payload))
        return
    print(f"order: {payload['order']}")
    print("coefficients: [" + ", ".join(payload["coefficients"]) + "]")
    print(f"degree: {payload['degree']}")
    if "certificate" in payload:
        print(f"certificate: {payload['certificate']}")
    for line in extra_lines:
        print(line)
    print(f"wall_seconds: {payload['wall_seconds']:.3f}")


def _cmd_telescope(args) -> int:
    P = _lower_arg(args.P, "xpoly")
    H = _lower_arg(args.H, "ratfn")
    if args.ST is None and args.exp is None:
        raise _Usage("one of --ST or --exp is required")
    ST = _lower_arg(args.ST, "ratfn") if args.ST is not None else QRat.const(0)
    if args.exp is not None:
        ST = ST + _lower_arg(args.exp, "ratfn").derivative()
    extra = []
    t0 = time.perf_counter()
    if args.ensure_minimal:
        P, ST, status = ensure_minimal(P, H, ST)
        extra.append(f"minimality: {status}")
    res = mixed_ct(P, H, ST, certificate=args.certificate,
                   dichotomic=args.dichotomic)
    wall = time.perf_counter() - t0
    _emit(_tel_payload(res.telescoper, res.certificate, wall),
          args.json, extra)
    return EXIT_OK


def _cmd_invert(args) -> int:
    f = _lower_arg(args.f, "ratfn")
    t0 = time.perf_counter()
    tel = invert_recurrence(f)
    wall = time.perf_counter() - t0
    n_check = args.verify
    if n_check:
        series = series_reversion(f, n_check + tel.order)
        if not check_recurrence(series, tel, (1, n_check)):
            print("verification failed: recurrence does not match the "
                  "series oracle", file=sys.stderr)
            return EXIT_VERIFY_FAILED
    _emit(_tel_payload(tel, None, wall), args.json)
    return EXIT_OK


def _load_telescoper(path: str) -> Telescoper:
    with open(path) as fh:
        data = json.load(fh)
    cleared = tuple(_lower_arg(src, "nrat") for src in data["coefficients"])
    cleared_p = []
    for c in cleared:
        if c.den.degree != 0:
            raise InvalidInputForm("cleared coefficients must be polynomial")
        cleared_p.append(c.num * (1 / c.den.coeff(0)))
    r = int(data["order"])
    if len(cleared_p) != r + 1 or cleared_p[r].is_zero():
        raise InvalidInputForm("coefficient count does not match the order")
    top = QRat(cleared_p[r], type(cleared_p[r]).const(1))
    coeffs = tuple(QRat(cleared_p[i], type(cleared_p[i]).const(1))
                   * top.inverse() * -1 for i in range(r))
    return Telescoper(order=r, coeffs=coeffs, cleared=tuple(cleared_p))


def _cmd_verify(args) -> int:
    from .telescoping import Certificate
    P = _lower_arg(args.P, "xpoly")
    H = _lower_arg(args.H, "ratfn")
    ST = _lower_arg(args.ST, "ratfn")
    term = build_term(P, H, ST)
    tel = _load_telescoper(args.telescoper)
    with open(args.certificate) as fh:
        text = fh.read().strip()
    try:
        data = json.loads(text)
        cert_src = data["certificate"] if isinstance(data, dict) else text
    except json.JSONDecodeError:
        cert_src = text
    cert = Certificate(Q=_lower_arg(cert_src, "xrat"))
    if verify_telescoper(term, tel, cert):
        print("verified")
        return EXIT_OK
    print("verification failed", file=sys.stderr)
    return EXIT_VERIFY_FAILED


def _cmd_bench(args) -> int:
    rows = bench_family(args.kmin, args.kmax, args.seed, args.coeff_bound)
    lines = [CSV_HEADER] + [row.csv() for row in rows]
    text = "\n".join(lines) + "\n"
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _build_parser() -> _Parser:
    top = _Parser(prog="hypertel")
    sub = top.add_subparsers(dest="command", required=True)

    t = sub.add_parser("telescope")
    t.add_argument("--P", required=True)
    t.add_argument("--H", required=True)
    t.add_argument("--ST")
    t.add_argument("--exp")
    t.add_argument("--json", action="store_true")
    t.add_argument("--certificate", action="store_true")
    t.add_argument("--ensure-minimal", dest="ensure_minimal",
                   action="store_true")
    t.add_argument("--dichotomic", action="store_true")
    t.set_defaults(func=_cmd_telescope)

    i = sub.add_parser("invert")
    i.add_argument("--f", required=True)
    i.add_argument("--verify", type=int, nargs="?", const=200, default=200)
    i.add_argument("--json", action="store_true")
    i.set_defaults(func=_cmd_invert)

    v = sub.add_parser("verify")
    v.add_argument("--P", required=True)
    v.add_argument("--H", required=True)
    v.add_argument("--ST", required=True)
    v.add_argument("--telescoper", required=True)
    v.add_argument("--certificate", required=True)
    v.set_defaults(func=_cmd_verify)

    b = sub.add_parser("bench")
    b.add_argument("--kmin", type=int, required=True)
    b.add_argument("--kmax", type=int, required=True)
    b.add_argument("--seed", type=int, required=True)
    b.add_argument("--coeff-bound", dest="coeff_bound", type=int,
                   default=100)
    b.add_argument("--csv")
    b.set_defaults(func=_cmd_bench)
    return top


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except _Usage as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except _Usage as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _PARSE_ERRORS as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InvalidInputForm, NotInvertibleSeries, ReportDegenerate) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except FileNotFoundError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HypertelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT


if __name__ == "__main__":
    sys.exit(main())
