"""Command-line interface: index, commutator, tame, verify.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 insufficient series precision.  JSON output is canonical (sorted keys,
fixed separators), so identical invocations are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys

from .detline import closed_commutator_formula, commutator, tame_symbol
from .errors import InsufficientPrecision, TateKitError
from .fields import GF, QQ, FieldCtx
from .index_map import index0
from .lattice import TateSpace, act, join, std_lattice
from .laurent import Automorphism, parse_laurent, parse_laurent_matrix
from .verify import SUITES, run_suites

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_PRECISION = 3


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _parse_field(text: str) -> FieldCtx:
    if text == "Q":
        return QQ
    if text.startswith("Fp:"):
        return GF(int(text.split(":", 1)[1]))
    if text.startswith("F") and text[1:].isdigit():
        return GF(int(text[1:]))
    raise ValueError("field must be Q, Fp:<p>, or F<p>; got %r" % text)


def _automorphism(ctx: FieldCtx, args) -> Automorphism:
    if getattr(args, "matrix", None):
        return Automorphism.gl(parse_laurent_matrix(ctx, args.matrix))
    if args.f is None:
        raise ValueError("need --f or --matrix")
    return Automorphism.mult_by(parse_laurent(ctx, args.f))


def cmd_index(args) -> int:
    ctx = _parse_field(args.field)
    g = _automorphism(ctx, args)
    space = TateSpace(ctx, g.rank)
    value = index0(g, space)
    if args.json:
        L = std_lattice(space, [0] * space.rank)
        gL = act(g, L)
        N = join(L, gL)
        print(
            _dumps(
                {
                    "index": value,
                    "L": L.to_json_dict(),
                    "gL": gL.to_json_dict(),
                    "N": N.to_json_dict(),
                }
            )
        )
    else:
        print(value)
    return EXIT_OK


def cmd_commutator(args) -> int:
    ctx = _parse_field(args.field)
    f = parse_laurent(ctx, args.f)
    g = parse_laurent(ctx, args.g)
    fa, ga = Automorphism.mult_by(f), Automorphism.mult_by(g)
    value = commutator(fa, ga, args.mode, precision=args.precision)
    formula = (
        tame_symbol(f, g) if args.mode == "graded" else closed_commutator_formula(f, g)
    )
    if args.json:
        print(
            _dumps(
                {
                    "commutator": {"value": str(value), "mode": args.mode},
                    "formula": str(formula),
                    "match": value == formula,
                }
            )
        )
    else:
        print(value)
    return EXIT_OK


def cmd_tame(args) -> int:
    ctx = _parse_field(args.field)
    value = tame_symbol(parse_laurent(ctx, args.f), parse_laurent(ctx, args.g))
    if args.json:
        print(_dumps({"tame_symbol": str(value)}))
    else:
        print(value)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite not in SUITES and args.suite != "all":
        print("unknown suite %r; choose from %s" % (args.suite, (*SUITES, "all")), file=sys.stderr)
        return EXIT_USAGE
    report = run_suites(args.suite, cases=args.cases, seed=args.seed)
    if args.json:
        print(_dumps(report))
    else:
        by_check = {}
        for c in report["checks"]:
            key = (c["suite"], c["check"])
            ok, total = by_check.get(key, (0, 0))
            by_check[key] = (ok + (c["status"] == "pass"), total + 1)
        for (suite, check), (ok, total) in sorted(by_check.items()):
            print("%-12s %-32s %d/%d" % (suite, check, ok, total))
        print(
            "%s: %d checks, %d failed"
            % ("PASS" if report["passed"] else "FAIL", len(report["checks"]), report["summary"]["fail"])
        )
    return EXIT_OK if report["passed"] else EXIT_VERIFY_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tatekit",
        description="Exact lattice calculus on k((t))^n: indices, determinant lines, tame symbols.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def positive(text):
        value = int(text)
        if value < 1:
            raise argparse.ArgumentTypeError("precision must be >= 1")
        return value

    def common(p):
        p.add_argument("--field", default="Q", help="Q or Fp:<p> (default Q)")
        p.add_argument("--precision", type=positive, default=16, help="series precision (default 16)")
        p.add_argument("--json", action="store_true", help="canonical JSON output")

    p_index = sub.add_parser("index", help="index of an automorphism at K_0")
    common(p_index)
    p_index.add_argument("--f", help="unit of k((t)), e.g. '1*t^1' or '1-t'")
    p_index.add_argument("--matrix", help="rows ';'-separated, entries ','-separated, e.g. 't,0;0,t^2'")
    p_index.set_defaults(func=cmd_index)

    p_comm = sub.add_parser("commutator", help="determinant-line commutator of two units")
    common(p_comm)
    p_comm.add_argument("--f", required=True)
    p_comm.add_argument("--g", required=True)
    p_comm.add_argument("--mode", choices=["graded", "ungraded"], default="ungraded")
    p_comm.set_defaults(func=cmd_commutator)

    p_tame = sub.add_parser("tame", help="tame symbol (closed formula)")
    common(p_tame)
    p_tame.add_argument("--f", required=True)
    p_tame.add_argument("--g", required=True)
    p_tame.set_defaults(func=cmd_tame)

    p_verify = sub.add_parser("verify", help="run randomized verification suites")
    p_verify.add_argument("--suite", default="all", help="one of %s" % ((*SUITES, "all"),))
    p_verify.add_argument("--cases", type=int, default=None, help="cases per suite")
    p_verify.add_argument("--seed", type=int, default=0, help="PRNG seed (default 0)")
    p_verify.add_argument("--json", action="store_true")
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InsufficientPrecision as exc:
        print("error: %s (rerun with --precision >= %d)" % (exc, exc.required), file=sys.stderr)
        return EXIT_PRECISION
    except (ValueError, TateKitError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
