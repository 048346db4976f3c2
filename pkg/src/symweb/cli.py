"""Command-line entry point.

Exit codes: 0 success, 1 parse or input error, 2 failed verification,
3 inexact division inside the exact arithmetic.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .braid import MODES, ColoredBraidWord, colored_jones
from .dsl import DslBoundaryError, DslSyntaxError, parse_and_elaborate
from .jw import jw_matrix, verify
from .qpoly import InexactDivisionError
from .relations import relation_catalogue, rule, sweep
from .repbackend import evaluate

EXIT_OK, EXIT_PARSE, EXIT_VERIFY, EXIT_INEXACT = 0, 1, 2, 3
SCHEMA = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _emit(payload: dict, text: str, as_json: bool):
    if as_json:
        print(json.dumps({"schema": SCHEMA, **payload}, sort_keys=True))
    else:
        print(text)


def _colors(text: str) -> tuple[int, ...]:
    try:
        out = tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad color list {text!r}") from None
    if not out or any(c < 1 for c in out):
        raise argparse.ArgumentTypeError("colors must be positive integers")
    return out


def cmd_eval(args) -> int:
    try:
        u, warnings = parse_and_elaborate(args.expr)
    except (DslSyntaxError, DslBoundaryError) as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    m = evaluate(u)
    if not m.domain and not m.codomain:
        v = m.scalar()
        _emit({"kind": "scalar", "value": str(v), "terms": v.to_json(), "warnings": warnings},
              str(v), args.json)
    else:
        _emit({"kind": "matrix", "matrix": m.to_json(), "warnings": warnings}, str(m), args.json)
    return EXIT_OK


def cmd_jones(args) -> int:
    try:
        b = ColoredBraidWord.parse(args.word, args.colors)
        b.check_closable()
    except ValueError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    try:
        v = colored_jones(b, args.mode)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    payload = {"kind": "jones", "colors": list(b.colors), "word": b.text(), "mode": args.mode,
               "value": str(v), "terms": v.to_json()}
    _emit(payload, str(v), args.json)
    return EXIT_OK


def cmd_jw(args) -> int:
    if args.k < 1:
        print("error: --k must be at least 1", file=sys.stderr)
        return EXIT_PARSE
    if not args.verify:
        m = jw_matrix(args.k)
        _emit({"kind": "jw", "k": args.k, "matrix": m.to_json()}, str(m), args.json)
        return EXIT_OK
    checks = verify(args.k)
    text = ", ".join(f"{name}: {'OK' if ok else 'FAIL'}" for name, ok in checks.items())
    _emit({"kind": "jw-verify", "k": args.k, "checks": checks}, text, args.json)
    return EXIT_OK if all(checks.values()) else EXIT_VERIFY


def cmd_check_relations(args) -> int:
    if args.rule:
        try:
            rules = [rule(n) for n in args.rule]
        except KeyError as e:
            names = ", ".join(r.name for r in relation_catalogue())
            print(f"error: unknown rule {e}; known rules: {names}", file=sys.stderr)
            return EXIT_PARSE
    else:
        rules = None
    reports = sweep(args.max_thickness, rules)
    failed = sum(not r.ok for r in reports)
    if args.json:
        payload = {"kind": "relations", "max_thickness": args.max_thickness,
                   "checked": len(reports), "failed": failed,
                   "results": [{"rule": r.rule, "params": r.params, "ok": r.ok} for r in reports]}
        _emit(payload, "", True)
    else:
        for r in reports:
            print(r.line())
        print(f"{len(reports) - failed}/{len(reports)} OK")
    return EXIT_VERIFY if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")

    p = _Parser(prog="symweb", description="Exact evaluation of symmetric sl2 webs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", parents=[common], help="evaluate a web written in the DSL")
    e.add_argument("expr")
    e.set_defaults(func=cmd_eval)

    j = sub.add_parser("jones", parents=[common], help="colored Jones invariant of a braid closure")
    j.add_argument("--colors", type=_colors, required=True, help="comma-separated strand colors")
    j.add_argument("--word", default="", help='braid word, e.g. "s1 s2 S1"')
    j.add_argument("--mode", choices=MODES, default="paper")
    j.set_defaults(func=cmd_jones)

    w = sub.add_parser("jw", parents=[common], help="Jones-Wenzl projector")
    w.add_argument("--k", type=int, required=True)
    w.add_argument("--verify", action="store_true", help="check idempotence, cap-killing, recursion")
    w.set_defaults(func=cmd_jw)

    r = sub.add_parser("check-relations", parents=[common], help="sweep the relation catalogue")
    r.add_argument("--max-thickness", type=int, default=4)
    r.add_argument("--rule", action="append", help="restrict to this rule (repeatable)")
    r.set_defaults(func=cmd_check_relations)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:  # usage errors and --help
        return e.code if isinstance(e.code, int) else EXIT_PARSE
    try:
        return args.func(args)
    except InexactDivisionError as e:
        print(f"internal error: inexact division: {e}", file=sys.stderr)
        return EXIT_INEXACT


run = main


if __name__ == "__main__":
    sys.exit(main())
