"""Command-line front end.

Exit status: 0 when everything parsed and every checked identity holds,
1 when an identity fails, 2 for malformed input, 3 when a word does not fit
the signature.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence, TextIO

from .bv import (
    GradedBVData,
    GysinData,
    bv_from_dict,
    check_bv_identity,
    check_gerstenhaber,
    check_leibniz,
    check_string_lie,
    gysin_from_dict,
    verify_T_lie_morphism,
)
from .bv_instances import EXAMPLES
from .goldman import goldman_bracket
from .hochschild import ALGEBRAS, INFORMATIONAL, verify_chain_identities
from .report import CheckReport
from .sphere import verify_grading, verify_sphere_jacobi
from .words import SignatureMismatch, WordParseError, format_word, normalize, parse_signature, parse_word

EXIT_OK, EXIT_FAILED, EXIT_PARSE, EXIT_MISMATCH = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="orbistring", description="Goldman brackets on orbifold disks and "
                     "checks of the associated BV, Gysin and Hochschild structures.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bracket", help="Goldman bracket of two loops")
    p.add_argument("--orders", required=True, help="cone point orders, e.g. 3,4")
    p.add_argument("--alpha", required=True, help="first loop, e.g. aab or g1^2g2")
    p.add_argument("--beta", required=True, help="second loop")
    p.add_argument("--method", choices=("general", "two_points"), default="general")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("normalize", help="canonical form of a loop")
    p.add_argument("--orders", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("sphere-check", help="Jacobi and grading of the sphere example")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--bound", type=int, default=2)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("bv-check", help="BV identities of a finite-dimensional instance")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--file", type=Path, help="JSON description (BV or Gysin data)")
    src.add_argument("--example", choices=sorted(EXAMPLES))
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("hochschild-check", help="chain-level identities of Hochschild chains")
    p.add_argument("--algebra", required=True, choices=sorted(ALGEBRAS))
    p.add_argument("--truncation", type=int, default=3)
    p.add_argument("--json", action="store_true")
    return parser


def _emit_reports(reports: Sequence[CheckReport], as_json: bool, out: TextIO,
                  informational: frozenset[str] = frozenset(), extra: dict | None = None) -> int:
    failed = [r for r in reports if not r.passed and r.name not in informational]
    if as_json:
        payload = {"schema": 1, "passed": not failed, "reports": [r.as_dict() for r in reports]}
        payload.update(extra or {})
        print(json.dumps(payload, indent=2), file=out)
    else:
        for r in reports:
            tag = " [informational]" if r.name in informational else ""
            print(r.line() + tag, file=out)
    return EXIT_FAILED if failed else EXIT_OK


def _cmd_bracket(args, out) -> int:
    sig = parse_signature(args.orders)
    alpha = normalize(parse_word(args.alpha, sig), sig)
    beta = normalize(parse_word(args.beta, sig), sig)
    result = goldman_bracket(alpha, beta, sig, method=args.method)
    if args.json:
        data = result.to_json()
        data["alpha"], data["beta"] = format_word(alpha), format_word(beta)
        print(json.dumps(data, ensure_ascii=False), file=out)
    else:
        print(result.format(), file=out)
    return EXIT_OK


def _cmd_normalize(args, out) -> int:
    sig = parse_signature(args.orders)
    w = normalize(parse_word(args.word, sig), sig)
    if args.json:
        print(json.dumps({"schema": 1, "signature": list(sig.orders), "word": format_word(w),
                          "letters": [list(l) for l in w.letters]}), file=out)
    else:
        print(format_word(w), file=out)
    return EXIT_OK


def _cmd_sphere(args, out) -> int:
    if args.bound < 1 or args.n < 1:
        raise ValueError("--n and --bound must be >= 1")
    reports = [verify_sphere_jacobi(args.bound, args.n), verify_grading(args.bound, args.n)]
    return _emit_reports(reports, args.json, out)


def _bv_reports(A: GradedBVData) -> list[CheckReport]:
    reports = A.structure_reports()
    bv, leib = check_bv_identity(A), check_leibniz(A)
    reports += [bv, leib]
    agree = CheckReport("seven-term and derivation checks agree", bv.passed == leib.passed, 1)
    reports.append(agree)
    if bv.passed:
        reports += check_gerstenhaber(A)
    return reports


def _gysin_reports(G: GysinData) -> list[CheckReport]:
    return (_bv_reports(G.B) + [G.exactness_report(), G.delta_report()]
            + check_string_lie(G) + [verify_T_lie_morphism(G)])


def _cmd_bv(args, out) -> int:
    if args.file is not None:
        try:
            data = json.loads(args.file.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ValueError(f"{args.file}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")
        obj = gysin_from_dict(data) if "H_degrees" in data else bv_from_dict(data)
    else:
        obj = EXAMPLES[args.example]()
    reports = _gysin_reports(obj) if isinstance(obj, GysinData) else _bv_reports(obj)
    return _emit_reports(reports, args.json, out)


def _cmd_hochschild(args, out) -> int:
    if args.truncation < 0:
        raise ValueError("--truncation must be >= 0")
    reps = verify_chain_identities(ALGEBRAS[args.algebra](), args.truncation)
    informational = frozenset(reps[k].name for k in INFORMATIONAL if k in reps)
    return _emit_reports(list(reps.values()), args.json, out, informational)


COMMANDS = {
    "bracket": _cmd_bracket,
    "normalize": _cmd_normalize,
    "sphere-check": _cmd_sphere,
    "bv-check": _cmd_bv,
    "hochschild-check": _cmd_hochschild,
}


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except SignatureMismatch as exc:
        print(f"signature mismatch: {exc}", file=err)
        return EXIT_MISMATCH
    except WordParseError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_PARSE
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PARSE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
