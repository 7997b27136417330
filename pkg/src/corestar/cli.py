"""Command-line front end.

Exit status: 0 on success, 2 when the requested inverse does not exist,
1 on any operational failure (bad flags, unreadable or malformed input,
dimension violations).  JSON output is printed with sorted keys, so it is
byte-identical across runs for the same input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import geninv
from .factorization import full_rank_factorize
from .linalg import DimensionError, Matrix
from .oracle import exhaustive_agreement
from .scalars import CorestarError
from .verify import (
    KIND_SYSTEMS,
    EquationSpec,
    check_decompositions,
    check_equations,
    check_factorization_triples,
)

EXIT_OK, EXIT_FAILURE, EXIT_NONEXISTENT = 0, 1, 2

INVERT_KINDS = ("13", "14", "group", "mp", "core", "dualcore", "bundle")
BUNDLE_SYSTEMS = {
    "core": KIND_SYSTEMS["core"],
    "dual_core": KIND_SYSTEMS["dualcore"],
    "mp": KIND_SYSTEMS["mp"],
    "group": KIND_SYSTEMS["group"],
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which would collide with "does not exist"
    def error(self, message):
        raise UsageError(message)


def _exponent(minimum: int):
    def parse(text: str) -> int:
        try:
            n = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
        if n < minimum:
            raise argparse.ArgumentTypeError(f"n must be >= {minimum}, got {n}")
        return n

    return parse


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="corestar", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("-o", "--output", help="write JSON here instead of standard output")
        return p

    p = add("factorize", "full-rank factorization A = B C")
    p.add_argument("matrix")

    p = add("invert", "compute a generalized inverse")
    p.add_argument("--kind", required=True, choices=INVERT_KINDS)
    p.add_argument("--n", type=_exponent(2), default=2, help="exponent for --kind bundle (>= 2)")
    p.add_argument("matrix")

    p = add("verify", "check a candidate inverse against its defining equations")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--kind", choices=INVERT_KINDS)
    group.add_argument("--system", help="Penrose subset like 1,3 or one of core5, core3, dual5, dual3, group")
    p.add_argument("matrix")
    p.add_argument("candidate", help="Matrix JSON or the output of `invert`")

    p = add("decompose", "image/kernel direct-sum statements")
    p.add_argument("--n", type=_exponent(1), default=2)
    p.add_argument("matrix")

    p = add("triples", "factorization-triple characterization of core invertibility")
    p.add_argument("--mode", choices=("core", "dual"), default="core")
    p.add_argument("matrix")

    p = add("oracle", "exhaustive brute-force agreement sweep over GF(p)")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--n", type=_exponent(2), default=2)
    p.add_argument("--workers", type=int, default=1)
    return parser


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise CorestarError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise CorestarError(f"{path} is not valid JSON: {exc}") from None


def _load_matrix(path: str) -> Matrix:
    return Matrix.from_json(_load_json(path))


def _candidate(doc, A: Matrix) -> Matrix:
    """Read X from Matrix JSON or from an `invert` result (entries only, field of A)."""
    if isinstance(doc, dict) and "inverse" in doc:
        entries = doc["inverse"]
        if not isinstance(entries, list) or not all(isinstance(r, list) for r in entries):
            raise CorestarError("inverse must be a list of rows")
        return Matrix.from_rows(A.field, entries, cols=A.rows)
    return Matrix.from_json(doc)


def _run(args) -> tuple[int, dict]:
    if args.verb == "factorize":
        return EXIT_OK, full_rank_factorize(_load_matrix(args.matrix)).to_json()

    if args.verb == "invert":
        A = _load_matrix(args.matrix)
        reason = geninv.nonexistence_reason(A, args.kind, args.n)
        if reason is not None:
            return EXIT_NONEXISTENT, {"exists": False, "reason": reason}
        if args.kind == "bundle":
            bundle = geninv.coexistence_bundle(A, args.n)
            return EXIT_OK, {"exists": True, "n": args.n, "bundle": bundle.to_json()}
        X = geninv.compute_inverse(A, args.kind)
        return EXIT_OK, {"exists": True, "inverse": X.entries_text()}

    if args.verb == "verify":
        A = _load_matrix(args.matrix)
        doc = _load_json(args.candidate)
        if isinstance(doc, dict) and doc.get("exists") is False:
            raise CorestarError("candidate document records a nonexistent inverse")
        if args.kind == "bundle":
            members = doc.get("bundle") if isinstance(doc, dict) else None
            if not isinstance(members, dict) or set(members) != set(BUNDLE_SYSTEMS):
                raise CorestarError(f"bundle needs members {sorted(BUNDLE_SYSTEMS)}")
            out = {}
            for name, spec in BUNDLE_SYSTEMS.items():
                report = check_equations(A, Matrix.from_json(members[name]), spec)
                out[name] = dict(report.to_json(), system=spec.label())
            return EXIT_OK, {"pass": all(r["pass"] for r in out.values()), "members": out}
        spec = KIND_SYSTEMS[args.kind] if args.kind else EquationSpec.parse(args.system)
        report = check_equations(A, _candidate(doc, A), spec)
        return EXIT_OK, dict(report.to_json(), system=spec.label())

    if args.verb == "decompose":
        return EXIT_OK, check_decompositions(_load_matrix(args.matrix), args.n).to_json()

    if args.verb == "triples":
        report = check_factorization_triples(_load_matrix(args.matrix), args.mode)
        return EXIT_OK, dict(report.to_json(), mode=args.mode)

    if args.verb == "oracle":
        report = exhaustive_agreement(args.p, args.m, args.n, workers=args.workers)
        return EXIT_OK, report.to_json()

    raise UsageError(f"unknown verb {args.verb!r}")


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        status, doc = _run(args)
    except (UsageError, CorestarError, DimensionError) as exc:
        print(f"corestar: error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    text = dumps(doc)
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"corestar: error: cannot write {args.output}: {exc.strerror}", file=sys.stderr)
            return EXIT_FAILURE
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
