"""Command-line surface: eval, diff, subst, check, derive, solve, roundtrip.

Every verb is a thin shell over the library; no arithmetic happens here.
Exit codes: 0 all checks pass, 1 a check failed, 2 usage/IO/parse errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import checks
from .intertwiner import IntertwinerTable, axiom_check, a_r, omega_r, shift_s1s2s3, solve_fusion_space, x_t
from .jsonio import SchemaError, dump_object, load_text
from .parser import ParseError, parse_expr
from .printer import series_str
from .reports import Report
from .scalars import LatticeViolation, pi_scalar
from .series import UndefinedProduct
from .substitution import (
    subst_scaled_exp,
    subst_x_exp_y,
    subst_x_inverse,
    subst_x_plus_y,
    subst_xy,
)


def _read_path(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _emit_report(report: Report, fmt: str) -> int:
    print(report.to_json() if fmt == "json" else report.to_text())
    return 0 if report.passed else 1


def _emit_series(f, fmt: str) -> int:
    if fmt == "json":
        import json

        print(json.dumps({"series": series_str(f)}))
    else:
        print(series_str(f))
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    return _emit_series(parse_expr(args.expr), args.format)


def cmd_diff(args: argparse.Namespace) -> int:
    f = parse_expr(args.expr)
    for _ in range(args.order):
        f = f.d_dx(args.var)
    return _emit_series(f, args.format)


def cmd_subst(args: argparse.Namespace) -> int:
    f = parse_expr(args.expr)
    kind = args.kind
    if kind == "shift":
        out = subst_x_plus_y(f, args.var, args.with_var, args.order)
    elif kind == "exp":
        out = subst_x_exp_y(f, args.var, args.with_var, args.order)
    elif kind == "product":
        out = subst_xy(f, args.var, args.with_var)
    elif kind == "inverse":
        out = subst_x_inverse(f, args.var)
    elif kind == "scale":
        out = subst_scaled_exp(f, args.var, pi_scalar(Fraction(args.q)))
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(kind)
    return _emit_series(out, args.format)


def cmd_check(args: argparse.Namespace) -> int:
    what = args.what
    if what == "taylor":
        rep = checks.check_taylor(args.samples, args.order, args.seed)
    elif what == "scaling":
        rep = checks.check_scaling(args.samples, args.order, args.seed)
    elif what == "comb":
        rep = checks.check_comb(args.kmax)
    elif what == "lubell":
        rep = checks.check_lubell(args.nmax, args.jmax)
    elif what == "matrices":
        rep = checks.check_matrices()
    elif what == "ode":
        rep = checks.check_ode(args.samples, args.seed)
    elif what == "sl2":
        rep = checks.check_sl2(args.count, args.seed, args.order)
    elif what == "scalars":
        rep = checks.check_scalars(args.seed)
    elif what == "series":
        rep = checks.check_logseries(args.seed)
    elif what == "fusion":
        rep = checks.check_fusion_suite(args.seed)
    elif what == "jacobi":
        rep = checks.check_jacobi(args.seed)
    elif what == "intertwiner":
        if not args.file:
            print("check intertwiner needs a FILE", file=sys.stderr)
            return 2
        table = load_text(_read_path(args.file))
        if not isinstance(table, IntertwinerTable):
            print("file does not hold an intertwiner table", file=sys.stderr)
            return 2
        rep = axiom_check(table, args.axioms)
    elif what == "all":
        rep = checks.check_all(args.seed, quick=args.quick)
    else:  # pragma: no cover
        raise ValueError(what)
    return _emit_report(rep, args.format)


def cmd_derive(args: argparse.Namespace) -> int:
    table = load_text(_read_path(args.file))
    if not isinstance(table, IntertwinerTable):
        print("derive needs an intertwiner table file", file=sys.stderr)
        return 2
    if args.op == "omega":
        out = omega_r(table, args.r)
    elif args.op == "ar":
        out = a_r(table, args.r)
    elif args.op == "xt":
        out = x_t(table, args.t)
    elif args.op == "shift":
        out = shift_s1s2s3(table, args.s1, args.s2, args.s3)
    else:  # pragma: no cover
        raise ValueError(args.op)
    sys.stdout.write(dump_object(out))
    return 0


def cmd_solve(args: argparse.Namespace) -> int:
    mods = [load_text(_read_path(p)) for p in args.modules]
    if len(mods) != 3:
        print("solve fusion needs exactly three module files", file=sys.stderr)
        return 2
    constraints = tuple(args.axioms.split(",")) if args.axioms else ("euler",)
    window = None
    if args.window:
        from .parser import parse_exponent

        window = [parse_exponent(part) for part in args.window.split(",")]
    tables = solve_fusion_space(
        mods[0], mods[1], mods[2], constraints=constraints, max_log=args.max_log, window=window
    )
    if args.format == "json":
        import json

        from .jsonio import table_to_json

        print(
            json.dumps(
                {"dimension": len(tables), "basis": [table_to_json(t) for t in tables]},
                indent=2,
                sort_keys=True,
            )
        )
    else:
        print(f"window-relative solution dimension: {len(tables)}")
        for idx, t in enumerate(tables):
            print(f"-- basis table {idx}:")
            for (i, j, n, k), vec in t.canonical_items():
                print(f"   mode(i={i}, j={j}, n={n!r}, k={k}) = {vec!r}")
    return 0


def cmd_roundtrip(args: argparse.Namespace) -> int:
    if args.fuzz:
        rep = checks.check_roundtrip_fuzz(args.fuzz, args.seed)
        return _emit_report(rep, args.format)
    if not args.file:
        print("roundtrip needs a FILE or --fuzz N", file=sys.stderr)
        return 2
    text = _read_path(args.file)
    obj = load_text(text)
    again = dump_object(obj)
    rep = Report("file-roundtrip")
    rep.add(f"byte-identical({args.file})", text == again)
    return _emit_report(rep, args.format)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="logcalc",
        description="Exact logarithmic formal calculus and intertwining-operator checks.",
    )
    ap.add_argument("--format", choices=("text", "json"), default="text")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("eval", help="parse an expression and print its canonical form")
    p.add_argument("expr")
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("diff", help="formal derivative of an expression")
    p.add_argument("expr")
    p.add_argument("--var", default="x")
    p.add_argument("--order", type=int, default=1)
    p.set_defaults(fn=cmd_diff)

    p = sub.add_parser("subst", help="substitution conventions")
    p.add_argument("expr")
    p.add_argument("--kind", choices=("shift", "exp", "product", "inverse", "scale"), required=True)
    p.add_argument("--var", default="x")
    p.add_argument("--with-var", default="y")
    p.add_argument("--order", type=int, default=6)
    p.add_argument("--q", default="2", help="scale kind: zeta = q*Pi")
    p.set_defaults(fn=cmd_subst)

    p = sub.add_parser("check", help="run a named identity suite")
    p.add_argument(
        "what",
        choices=(
            "taylor", "scaling", "comb", "lubell", "matrices", "ode", "sl2",
            "scalars", "series", "fusion", "jacobi", "intertwiner", "all",
        ),
    )
    p.add_argument("file", nargs="?", help="intertwiner file for `check intertwiner`")
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kmax", type=int, default=10)
    p.add_argument("--nmax", type=int, default=6)
    p.add_argument("--jmax", type=int, default=4)
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--axioms", default="all")
    p.add_argument("--quick", action="store_true", help="smaller sample counts")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("derive", help="derive a new table from an intertwiner file")
    p.add_argument("op", choices=("omega", "ar", "xt", "shift"))
    p.add_argument("file", help="intertwiner JSON file, or - for stdin")
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--t", type=int, default=0)
    p.add_argument("--s1", type=int, default=0)
    p.add_argument("--s2", type=int, default=0)
    p.add_argument("--s3", type=int, default=0)
    p.set_defaults(fn=cmd_derive)

    p = sub.add_parser("solve", help="solve for a basis of the constrained table space")
    p.add_argument("what", choices=("fusion",))
    p.add_argument("--modules", nargs=3, required=True, metavar=("W1", "W2", "W3"))
    p.add_argument("--axioms", default="euler", help="comma-separated constraint names")
    p.add_argument("--max-log", type=int, default=None)
    p.add_argument("--window", default=None, help="comma-separated exponents n to solve over")
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("roundtrip", help="byte round-trip a data file, or fuzz the parser")
    p.add_argument("file", nargs="?")
    p.add_argument("--fuzz", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_roundtrip)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except BrokenPipeError:
        # downstream consumer (head, less) closed the pipe: not an error
        try:
            sys.stdout.close()
        except Exception:
            pass
        return 0
    except (ParseError, SchemaError, LatticeViolation, UndefinedProduct, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
