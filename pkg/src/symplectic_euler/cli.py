"""Command-line interface: tables, series, identity reports and oracle runs.

Exit codes: 0 success, 2 invalid parameters or unsupported size, 3 a
cross-route self-check failed, 4 an identity failed, 5 the brute-force
oracle disagreed with the formula.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from .counting import PrimePowerOrderContext, is_prime, prime_power
from .exactalg import Q, QPoly
from .genfun import (
    RouteMismatch,
    cross_check,
    fsp_at,
    fsp_closed,
    fsp_direct,
    fsp_direct_coeff,
    fsp_exponential,
    fsp_p,
    fsp_p_infinite_product,
    gsp_expansion,
    gsp_ordered,
    gsp_p,
    gsp_recurrence,
)
from .identities import IDENTITY_IDS, run_identities

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_ROUTE = 3
EXIT_IDENTITY = 4
EXIT_MISMATCH = 5


class InvalidParams(ValueError):
    pass


def parse_range(text, name, minimum=0):
    """'3', '1..6' or '1,2,5' -> sorted list of ints."""
    out = set()
    try:
        for piece in str(text).split(","):
            piece = piece.strip()
            if ".." in piece:
                lo, hi = piece.split("..", 1)
                lo, hi = int(lo), int(hi)
                if hi < lo:
                    raise InvalidParams(f"empty range {piece!r} for --{name}")
                out.update(range(lo, hi + 1))
            else:
                out.add(int(piece))
    except ValueError as exc:
        if isinstance(exc, InvalidParams):
            raise
        raise InvalidParams(f"cannot parse --{name} {text!r}") from None
    vals = sorted(out)
    if not vals or vals[0] < minimum:
        raise InvalidParams(f"--{name} values must be at least {minimum}")
    return vals


def _threads():
    try:
        return max(1, int(os.environ.get("SYMPLECTIC_EULER_THREADS", "1")))
    except ValueError:
        return 1


def _check_q(q):
    if q is None or prime_power(q) is None:
        raise InvalidParams(f"--q must be a prime power, got {q}")


def _check_p(p):
    if p is None or not is_prime(p):
        raise InvalidParams(f"--p must be prime, got {p}")


def _render(v):
    if isinstance(v, QPoly):
        return str(v) if not v.is_constant() else str(v.constant())
    return str(v)


def _json_value(v):
    if isinstance(v, QPoly):
        return str(v) if not v.is_constant() else _json_value(v.constant())
    if hasattr(v, "denominator"):
        return int(v) if v.denominator == 1 else str(v)
    return v


class Output:
    """Buffers rows and writes them in the chosen format."""

    def __init__(self, args, columns):
        self.fmt = args.format
        self.header = not args.no_version_header
        self.columns = columns
        self.rows = []

    def add(self, *values):
        self.rows.append(values)

    def emit(self, stream):
        buf = io.StringIO()
        if self.header:
            buf.write(f"# symplectic_euler {__version__}\n")
        if self.fmt == "csv":
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(self.columns)
            for row in self.rows:
                w.writerow([_render(v) for v in row])
        else:
            for row in self.rows:
                rec = {c: _json_value(v) for c, v in zip(self.columns, row)}
                buf.write(json.dumps(rec) + "\n")
        stream.write(buf.getvalue())


def _signed(value, sign):
    return value if sign == "minus-chi" else -value


# subcommands

def cmd_table(args, out):
    _check_q(args.q)
    rs = parse_range(args.r, "r", 1)
    ns = parse_range(args.n, "n", 1)
    N = max(ns)
    q = args.q

    def cell(r, n):
        value = fsp_at(r, q, N)[n]
        # independent route for every printed cell
        check = 0 if r == 1 else fsp_direct_coeff(r - 1, n)(q)
        if value != check:
            raise RouteMismatch(f"table cell r={r}, n={n}: {value} vs {check}")
        return int(value)

    for r in rs:
        fsp_closed(r, N)  # warm the cache before threads share it
    cells = [(r, n) for r in rs for n in ns]
    threads = _threads()
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            values = list(ex.map(lambda rn: cell(*rn), cells))
    else:
        values = [cell(r, n) for r, n in cells]
    tab = Output(args, ["r", "n", "value"])
    for (r, n), v in zip(cells, values):
        tab.add(r, n, _signed(v, args.sign))
    tab.emit(out)
    return EXIT_OK


def _series_fsp(args):
    if args.r is None or args.r < 1:
        raise InvalidParams("series fsp needs --r >= 1")
    N = args.N
    if args.symbolic:
        main = fsp_closed(args.r, N)
        for other in (fsp_exponential(args.r, None, N), fsp_direct(args.r, N)):
            if other != main:
                raise RouteMismatch(f"symbolic routes disagree for F^{args.r}")
        return list(main.coeffs)
    _check_q(args.q)
    routes = cross_check(args.r, args.q, N)
    return list(routes["closed_product"].series.coeffs)


def _series_fsp_p(args):
    if args.r is None or args.r < 1:
        raise InvalidParams("series fsp-p needs --r >= 1")
    _check_q(args.q)
    _check_p(args.p)
    if args.q % args.p == 0:
        return [1] + [0] * args.N
    ctx = PrimePowerOrderContext(args.p, args.q)
    main = fsp_p(args.r, ctx, args.N)
    if fsp_p_infinite_product(args.r, ctx, args.N) != main:
        raise RouteMismatch("p-primary infinite product disagrees")
    return list(main.coeffs)


def _series_gsp(args):
    if args.n is None or args.n < 0:
        raise InvalidParams("series gsp needs --n >= 0")
    qv = Q if args.symbolic else args.q
    if not args.symbolic:
        _check_q(args.q)
    main = gsp_expansion(args.n, qv, args.N)
    for other in (gsp_recurrence(args.n, qv, args.N), gsp_ordered(args.n, qv, args.N)):
        if other != main:
            raise RouteMismatch(f"G_{2 * args.n} routes disagree")
    return list(main.coeffs)


def _series_gsp_p(args):
    if args.n is None or args.n < 0:
        raise InvalidParams("series gsp-p needs --n >= 0")
    _check_q(args.q)
    _check_p(args.p)
    if args.q % args.p == 0:
        raise InvalidParams("series gsp-p needs p not dividing q")
    ctx = PrimePowerOrderContext(args.p, args.q)
    main = gsp_p(args.n, ctx, args.N)
    if args.n > 0:
        # duality with the F side: x^k of G_{2n} is x^n of F^{k+1}
        for k in range(args.N + 1):
            if fsp_p(k + 1, ctx, args.n)[args.n] != main[k]:
                raise RouteMismatch(f"p-primary G/F duality fails at k={k}")
    return list(main.coeffs)


def cmd_series(args, out):
    if args.N < 0:
        raise InvalidParams("--N must be nonnegative")
    kinds = {"fsp": _series_fsp, "fsp-p": _series_fsp_p, "gsp": _series_gsp, "gsp-p": _series_gsp_p}
    coeffs = kinds[args.kind](args)
    tab = Output(args, ["n", "value"])
    for i, c in enumerate(coeffs):
        tab.add(i, c)
    tab.emit(out)
    return EXIT_OK


def cmd_pseries(args, out):
    """Grid of p-primary values -chi_r^p(Sp(2n, q))."""
    _check_q(args.q)
    _check_p(args.p)
    rs = parse_range(args.r, "r", 1)
    ns = parse_range(args.n, "n", 1)
    N = max(ns)
    tab = Output(args, ["r", "n", "value"])
    for r in rs:
        if args.q % args.p == 0:
            coeffs = [1] + [0] * N
        else:
            coeffs = fsp_p(r, PrimePowerOrderContext(args.p, args.q), N).coeffs
        for n in ns:
            tab.add(r, n, _signed(int(coeffs[n]), args.sign))
    tab.emit(out)
    return EXIT_OK


def cmd_gsp(args, out):
    """Grid of coefficients x^k of G_{2n}, checked against the recurrence."""
    ns = parse_range(args.n, "n", 0)
    if args.N < 0:
        raise InvalidParams("--N must be nonnegative")
    qv = Q if args.symbolic else args.q
    if not args.symbolic:
        _check_q(args.q)
    tab = Output(args, ["n", "k", "value"])
    for n in ns:
        main = gsp_expansion(n, qv, args.N)
        if gsp_recurrence(n, qv, args.N) != main:
            raise RouteMismatch(f"G_{2 * n} routes disagree")
        for k, c in enumerate(main.coeffs):
            tab.add(n, k, c)
    tab.emit(out)
    return EXIT_OK


def cmd_identities(args, out):
    if args.all or not args.which:
        which = list(IDENTITY_IDS)
    else:
        which = [w.strip() for part in args.which for w in part.split(",") if w.strip()]
        for w in which:
            if w not in IDENTITY_IDS:
                raise InvalidParams(f"unknown identity {w!r}; choose from {', '.join(IDENTITY_IDS)}")
    if args.N < 0:
        raise InvalidParams("--N must be nonnegative")
    r = parse_range(args.r, "r", 1) if args.r is not None else None
    reports = run_identities(which, args.N, r)
    failed = [rep for rep in reports if not rep.passed]
    tab = Output(args, ["identity", "epsilon", "params", "max_degree", "status", "values"])
    for rep in reports:
        params = ";".join(f"{k}={rep.params[k]}" for k in sorted(rep.params))
        tab.add(rep.identity_id, rep.epsilon, params, rep.max_degree_checked, rep.status, "|".join(rep.values))
    tab.emit(out)
    if failed:
        for rep in failed:
            out.write(rep.to_json() + "\n")
        return EXIT_IDENTITY
    return EXIT_OK


def cmd_oracle(args, out):
    from .groups.oracle import UnsupportedSize, chi_r_bruteforce, chi_r_p_bruteforce

    for name in ("n", "q", "r"):
        if getattr(args, name) is None:
            raise InvalidParams(f"oracle needs --{name}")
    _check_q(args.q)
    if args.p is not None:
        _check_p(args.p)
    n, q, r, p = args.n, args.q, args.r, args.p
    try:
        brute = -(chi_r_bruteforce(n, q, r) if p is None else chi_r_p_bruteforce(n, q, r, p))
    except UnsupportedSize as exc:
        raise InvalidParams(str(exc)) from None
    if p is None:
        formula = int(fsp_at(r, q, n)[n])
    elif q % p == 0:
        formula = 0
    else:
        formula = int(fsp_p(r, PrimePowerOrderContext(p, q), n)[n])
    match = brute == formula
    tab = Output(args, ["n", "q", "r", "p", "brute", "formula", "match"])
    tab.add(n, q, r, "" if p is None else p, _signed(brute, args.sign), _signed(formula, args.sign),
            "true" if match else "false")
    tab.emit(out)
    return EXIT_OK if match else EXIT_MISMATCH


def cmd_selftest(args, out):
    """A fast tour: route agreement, identities at low degree, oracle, kernels."""
    from .groups.oracle import chi_r_bruteforce
    from . import kernels

    tab = Output(args, ["check", "status"])
    code = EXIT_OK

    def record(name, ok, fail_code):
        nonlocal code
        tab.add(name, "pass" if ok else "fail")
        if not ok and code == EXIT_OK:
            code = fail_code

    for q in (2, 3):
        for r in (2, 3, 4):
            try:
                cross_check(r, q, 4)
                ok = True
            except RouteMismatch:
                ok = False
            record(f"routes r={r} q={q}", ok, EXIT_ROUTE)
    reps = run_identities(["polidgl", "tsts", "master-a+"], 4, [2])
    record("identities N=4", all(rep.passed for rep in reps), EXIT_IDENTITY)
    record("oracle n=1 q=2 r=3", -chi_r_bruteforce(1, 2, 3) == fsp_at(3, 2, 1)[1], EXIT_MISMATCH)
    comp = kernels.compiled_backend()
    if comp is not None:
        import numpy as np

        from .groups.fields import build_field

        F = build_field(3)
        polys = np.array([[1, 0, 1], [2, 0, 1], [1, 1, 1], [2, 1, 1]], dtype=np.uint8)
        a = comp.irreducible_flags(polys, F.add, F.mul, F.neg, F.inv, 3)
        b = kernels.python_backend.irreducible_flags(polys, F.add, F.mul, F.neg, F.inv, 3)
        record("kernel backends agree", bool((a == b).all()), EXIT_ROUTE)
    tab.emit(out)
    return code


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--sign", choices=("chi", "minus-chi"), default="minus-chi",
                        help="print chi or -chi (default -chi)")
    common.add_argument("--no-version-header", action="store_true")

    parser = argparse.ArgumentParser(prog="symplectic-euler", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"symplectic_euler {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="-chi_r(Sp(2n,q)) grid")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", default="1..6")
    p.add_argument("--n", default="1..6")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("series", parents=[common], help="coefficients of a generating function")
    p.add_argument("kind", choices=("fsp", "fsp-p", "gsp", "gsp-p"))
    p.add_argument("--r", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--N", type=int, default=6)
    p.add_argument("--symbolic", action="store_true", help="keep q as an indeterminate")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("pseries", parents=[common], help="p-primary -chi_r grid")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--r", default="2..5")
    p.add_argument("--n", default="1..4")
    p.set_defaults(func=cmd_pseries)

    p = sub.add_parser("gsp", parents=[common], help="coefficients of G_{2n} for a range of n")
    p.add_argument("--n", default="0..4")
    p.add_argument("--q", type=int)
    p.add_argument("--N", type=int, default=6)
    p.add_argument("--symbolic", action="store_true")
    p.set_defaults(func=cmd_gsp)

    p = sub.add_parser("identities", parents=[common], help="verify polynomial identities")
    p.add_argument("--all", action="store_true")
    p.add_argument("--which", action="append", help="identity id (repeat or comma-separate)")
    p.add_argument("--N", type=int, default=8)
    p.add_argument("--r", help="r values for the master identities (default 1..4)")
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("oracle", parents=[common], help="brute force against the formula")
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--p", type=int)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("selftest", parents=[common], help="quick consistency tour")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None, stdout=None):
    stdout = stdout if stdout is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    buf = io.StringIO()
    try:
        code = args.func(args, buf)
    except InvalidParams as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except RouteMismatch as exc:
        stdout.write(buf.getvalue())
        print(f"cross-route check failed: {exc}", file=sys.stderr)
        return EXIT_ROUTE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    stdout.write(buf.getvalue())
    stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
