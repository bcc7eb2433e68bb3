"""Command-line entry point: ``cdshuffle <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import tree
from .algebra import LevelError, ProductSpec, basis_mul, mul, product_from_name
from .gate import elimination_report
from .render import element_json_decode, element_json_encode, render_csv, render_pgm
from .structure import all_triples, fano_orientation, format_triples
from .twists import basis_product, mul_via_twist, twist_id, twist_table
from .verify import run_checks


class UsageError(Exception):
    pass


def _product(name: str) -> ProductSpec:
    try:
        return product_from_name(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _valid_product(name: str):
    spec = _product(name)
    if not spec.valid:
        raise UsageError(f"{name} is not one of the eight valid products")
    return spec


def _read_element(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    try:
        return element_json_decode(text)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


def cmd_mul(args) -> int:
    spec = _product(args.product)
    x, y = _read_element(args.x), _read_element(args.y)
    try:
        if args.engine == "twist":
            if not spec.valid:
                raise UsageError("the twist engine needs one of the eight valid products")
            z = mul_via_twist(twist_id(spec), x, y, promote=args.promote)
        else:
            z = mul(spec, x, y, promote=args.promote)
    except LevelError as exc:
        raise UsageError(str(exc)) from None
    print(element_json_encode(z))
    return 0


def cmd_basis_mul(args) -> int:
    spec = _product(args.product)
    if args.p < 0 or args.q < 0:
        raise UsageError("indices must be non-negative")
    if args.engine == "doubling":
        result = basis_mul(spec, args.p, args.q)
    elif args.engine == "twist":
        result = basis_product(twist_id(_valid_product(args.product)), args.p, args.q)
    else:
        if spec.name != "P2":
            raise UsageError("the tree engine only computes the P2 twist")
        result = (tree.evaluate(args.p, args.q), args.p ^ args.q)
    sign, index = result
    print(f"{'+' if sign > 0 else '-'}e{index}")
    return 0


def cmd_twist_table(args) -> int:
    spec = _valid_product(args.product)
    try:
        table = twist_table(twist_id(spec), args.n)
    except LevelError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "csv":
        data = (render_csv(table, header=args.header) + "\n").encode("ascii")
    else:
        data = render_pgm(table, binary=args.format == "pgm", plus=args.plus_gray, minus=args.minus_gray)
    if args.out:
        Path(args.out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return 0


def cmd_triples(args) -> int:
    spec = _valid_product(args.product)
    if not 1 <= args.n <= 8:
        raise UsageError("--n must be in 1..8")
    triples = sorted(all_triples(spec, args.n))
    if args.json:
        print(json.dumps([list(t) for t in triples]))
    elif triples:
        print(format_triples(triples))
    return 0


def cmd_eliminate(args) -> int:
    if args.smax < 1 or not 1 <= args.n <= 6:
        raise UsageError("need --smax >= 1 and 1 <= --n <= 6")
    report = elimination_report(args.smax, args.n)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(report.render_text())
    return 0 if report.matches_expected else 1


def cmd_tree(args) -> int:
    if args.p < 0 or args.q < 0:
        raise UsageError("indices must be non-negative")
    result = tree.run(args.p, args.q)
    print(result.trace() if args.trace else f"{result.sign:+d}")
    return 0


def cmd_fano(args) -> int:
    spec = _valid_product(args.product)
    o = fano_orientation(spec)
    print(f"{spec.name}: {o.arrows()}  altitudes={o.altitudes} circle={o.circle} sides={o.sides}")
    return 0


def cmd_conjecture(args) -> int:
    try:
        report = tree.conjecture_scan(args.bound)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(json.dumps(report.to_dict(), indent=2) if args.json else report.render_text())
    return 0


def cmd_verify(args) -> int:
    try:
        results = run_checks(args.level)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    for r in results:
        print(r.line())
    failed = sum(not r.ok for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed at level {args.level}")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cdshuffle", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mul", help="multiply two elements given as JSON files ('-' for stdin)")
    p.add_argument("--product", required=True)
    p.add_argument("--engine", choices=("doubling", "twist"), default="doubling")
    p.add_argument("--promote", action="store_true", help="zero-pad the lower-level operand")
    p.add_argument("x")
    p.add_argument("y")
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("basis-mul", help="product of two basis vectors")
    p.add_argument("--product", required=True)
    p.add_argument("--engine", choices=("doubling", "twist", "tree"), default="doubling")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.set_defaults(func=cmd_basis_mul)

    p = sub.add_parser("twist-table", help="twist table as CSV or PGM")
    p.add_argument("--product", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("csv", "pgm", "pgm-ascii"), default="csv")
    p.add_argument("--out")
    p.add_argument("--header", action="store_true", help="CSV only: add index row and column")
    p.add_argument("--plus-gray", type=int, default=64)
    p.add_argument("--minus-gray", type=int, default=192)
    p.set_defaults(func=cmd_twist_table)

    p = sub.add_parser("triples", help="structure-constant triples")
    p.add_argument("--product", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_triples)

    p = sub.add_parser("eliminate", help="reduce 32 candidate products to 8")
    p.add_argument("--smax", type=int, default=8)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_eliminate)

    p = sub.add_parser("tree", help="P2 twist by the tree automaton")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("fano", help="oriented Fano plane descriptor")
    p.add_argument("--product", required=True)
    p.set_defaults(func=cmd_fano)

    p = sub.add_parser("conjecture", help="scan the suggested P2 twist laws")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--level", type=int, default=6)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, OSError) as exc:
        print(f"cdshuffle: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
