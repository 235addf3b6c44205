"""Command-line front end.

Subcommands wrap the library pipelines around the shared JSON forms; every
report is deterministic given its inputs and seed.  Exit codes are a stable
contract:

  0 success          3 numerical instability    6 sampling failure
  1 parse error      4 bad index                7 relation residuals too large
  2 not in the       5 non-generic point
    generic locus
"""

import argparse
import json
import sys

import numpy as np

from . import charts
from . import flows, hessenberg, jsonio, ladder as lad, numerics, orthopoly, verify
from .errors import (
    DimensionMismatch,
    GZError,
    NonGenericPoint,
    NotInOmega,
    NumericalInstability,
    SamplingFailure,
)

EXIT_PARSE = 1
EXIT_NOT_IN_OMEGA = 2
EXIT_INSTABILITY = 3
EXIT_BAD_INDEX = 4
EXIT_NON_GENERIC = 5
EXIT_SAMPLING = 6
EXIT_RELATIONS = 7


def _load(path):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise _ParseError(f"cannot read {path}: {exc}") from exc


class _ParseError(Exception):
    pass


def _parse_complex(text):
    """Complex flag format 're,im' (a bare real part is accepted)."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise _ParseError(f"bad complex literal {text!r}") from exc
    raise _ParseError(f"bad complex literal {text!r}")


def _emit(obj):
    print(jsonio.dump(obj))


def _within_level_gaps(ladder):
    gaps = []
    for m in range(1, ladder.n + 1):
        level = ladder.level(m)
        if m == 1:
            gaps.append(None)
            continue
        diff = np.abs(level[:, None] - level[None, :])
        np.fill_diagonal(diff, np.inf)
        gaps.append(float(np.min(diff)))
    return gaps


def _adjacent_level_gaps(ladder):
    return [
        float(
            np.min(
                np.abs(
                    ladder.level(m)[:, None] - ladder.level(m + 1)[None, :]
                )
            )
        )
        for m in range(1, ladder.n)
    ]


def cmd_ladder(args):
    x = jsonio.matrix_from_json(_load(args.matrix))
    z = lad.extract_ladder(x)
    member = lad.in_e_omega(z.ladder, tol=args.tol)
    _emit(
        {
            "ladder": jsonio.ladder_to_json(z.ladder),
            "member": member,
            "within_level_gaps": _within_level_gaps(z.ladder),
            "adjacent_level_gaps": _adjacent_level_gaps(z.ladder),
        }
    )
    if args.strict and not member:
        return EXIT_NOT_IN_OMEGA
    return 0


def cmd_reconstruct(args):
    ladder = jsonio.ladder_from_json(_load(args.ladder))
    y = hessenberg.reconstruct(ladder)
    worst = 0.0
    for m in range(1, ladder.n + 1):
        target = numerics.poly_from_roots(ladder.level(m))
        got = numerics.charpoly(numerics.principal_minor(y, m))
        worst = max(worst, float(np.max(np.abs(got - target))))
    print(f"max charpoly residual: {worst:.3e}", file=sys.stderr)
    _emit(jsonio.matrix_to_json(y))
    return 0


def cmd_flow(args):
    x = jsonio.matrix_from_json(_load(args.matrix))
    if not lad.in_M_omega(x, tol=args.tol):
        raise NotInOmega("matrix is outside the generic locus")
    z = lad.extract_ladder(x)
    q = _parse_complex(args.time)
    out = flows.one_param_flow(z, args.index, q)
    drift = verify.ladder_drift(z, args.index, q)
    _emit({"matrix": jsonio.matrix_to_json(out.x), "ladder_drift": drift})
    return 0


def cmd_chart(args):
    x = jsonio.matrix_from_json(_load(args.matrix))
    p = charts.chart(x, tol=args.tol)
    _emit(jsonio.chartpoint_to_json(p))
    return 0


def cmd_unchart(args):
    p = jsonio.chartpoint_from_json(_load(args.chartpoint))
    x = charts.unchart(p, tol=args.tol)
    _emit(jsonio.matrix_to_json(x))
    return 0


def cmd_verify(args):
    if not 2 <= args.n <= 8:
        raise _ParseError("verify supports 2 <= n <= 8")
    report = verify.verification_report(args.n, args.seed, args.samples, args.tol)
    _emit(report)
    return 0 if report["ok"] else EXIT_RELATIONS


def cmd_demo(args):
    if args.n > 12:
        raise _ParseError("demo supports n <= 12")
    _emit(orthopoly.demo(args.measure, args.n))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gzkit",
        description="Eigenvalue ladders, section reconstruction, exact flows, "
        "coordinate charts, and relation verification for complex matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ladder", help="extract minor spectra and membership")
    p.add_argument("matrix", help="matrix JSON file")
    p.add_argument("--tol", type=float, default=lad.GAP_TOL)
    p.add_argument("--strict", action="store_true", help="exit 2 on non-members")
    p.set_defaults(func=cmd_ladder)

    p = sub.add_parser("reconstruct", help="section matrix from a ladder")
    p.add_argument("ladder", help="ladder JSON file")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("flow", help="integrate one eigenvalue flow exactly")
    p.add_argument("matrix", help="matrix JSON file")
    p.add_argument("--index", type=int, required=True, help="flat index, 1-based")
    p.add_argument("--time", required=True, help="flow time as 're,im'")
    p.add_argument("--tol", type=float, default=lad.GAP_TOL)
    p.set_defaults(func=cmd_flow)

    p = sub.add_parser("chart", help="coordinates of a generic matrix")
    p.add_argument("matrix", help="matrix JSON file")
    p.add_argument("--tol", type=float, default=charts.CHART_TOL)
    p.set_defaults(func=cmd_chart)

    p = sub.add_parser("unchart", help="matrix from chart coordinates")
    p.add_argument("chartpoint", help="chart-point JSON file")
    p.add_argument("--tol", type=float, default=charts.CHART_TOL)
    p.set_defaults(func=cmd_unchart)

    p = sub.add_parser("verify", help="residuals of the commutation relations")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("demo-orthopoly", help="orthogonal-polynomial ladder demo")
    p.add_argument("--measure", choices=orthopoly.MEASURES, default=orthopoly.CHEBYSHEV)
    p.add_argument("--n", type=int, default=6)
    p.set_defaults(func=cmd_demo)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else EXIT_PARSE
    try:
        return args.func(args)
    except _ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotInOmega as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_IN_OMEGA
    except NumericalInstability as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INSTABILITY
    except DimensionMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INDEX
    except NonGenericPoint as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NON_GENERIC
    except SamplingFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SAMPLING
    except (GZError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
