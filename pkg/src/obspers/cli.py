"""Batch command line front-end.

Exit codes: 0 success (and `ob-iso` answering yes), 1 `ob-iso` answering
no, 2 parse failure, 3 invariant violation, 4 bad arguments.  All output
is deterministic, canonically sorted and newline-terminated.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .decomposition import decompose
from .diagrams import NEG_INF, POS_INF, Rectangle, diagram, diagram_to_text, measure, ob_isomorphic
from .distances import bottleneck, build_interleaving, verify_interleaving
from .fileio import ModuleFileError, module_to_json, parse_module_file
from .gfp import FieldSpec
from .intervals import format_exact, parse_exact
from .modules import random_module
from .observable import bar, limiting_ranks, radical, strict_rank, underbar


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit code 4 instead of argparse's 2
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="obspers", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("validate", "decompose", "diagram", "radical", "bar", "underbar"):
        p = sub.add_parser(name)
        p.add_argument("file")

    # corner tokens like -inf or -1/3 must not be mistaken for option flags
    p = sub.add_parser("measure", prefix_chars="\0", add_help=False)
    p.add_argument("file")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("c")
    p.add_argument("d")

    p = sub.add_parser("ranks", prefix_chars="\0", add_help=False)
    p.add_argument("file")
    p.add_argument("s")
    p.add_argument("t")

    for name in ("ob-iso", "bottleneck", "interleave"):
        p = sub.add_parser(name)
        p.add_argument("file1")
        p.add_argument("file2")

    p = sub.add_parser("random")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--criticals", type=int, required=True)
    p.add_argument("--maxdim", type=int, required=True)
    p.add_argument("--field", type=int, default=2)
    return parser


def _parse_corner(token: str):
    if token in ("-inf", "-oo"):
        return NEG_INF
    if token in ("+inf", "inf", "+oo"):
        return POS_INF
    try:
        return parse_exact(token)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _parse_real(token: str) -> Fraction:
    try:
        return parse_exact(token)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _format_value(x) -> str:
    return "inf" if x == POS_INF else format_exact(x)


def _print_matching(witness) -> None:
    for i, j in witness.pairs:
        print(f"pair {i} {j}")
    for i in witness.unmatched1:
        print(f"unmatched1 {i}")
    for j in witness.unmatched2:
        print(f"unmatched2 {j}")


def _run(args) -> int:
    cmd = args.command
    if cmd == "random":
        if not (0 <= args.criticals <= 25):
            raise UsageError("--criticals must be between 0 and 25")
        if args.maxdim < 0:
            raise UsageError("--maxdim must be nonnegative")
        v = random_module(args.seed, FieldSpec(args.field), args.criticals,
                          args.maxdim)
        sys.stdout.write(module_to_json(v))
        return 0

    if cmd in ("validate", "decompose", "diagram", "radical", "bar", "underbar",
               "measure", "ranks"):
        v = parse_module_file(args.file)
        if cmd == "validate":
            print("ok")
        elif cmd == "decompose":
            barcode = decompose(v).barcode
            for iv, mult in barcode:
                print(f"{iv} x {mult}")
        elif cmd == "diagram":
            sys.stdout.write(diagram_to_text(diagram(v)))
        elif cmd == "radical":
            sys.stdout.write(module_to_json(radical(v)))
        elif cmd == "bar":
            sys.stdout.write(module_to_json(bar(v)))
        elif cmd == "underbar":
            sys.stdout.write(module_to_json(underbar(v)))
        elif cmd == "measure":
            a, b, c, d = (_parse_corner(t)
                          for t in (args.a, args.b, args.c, args.d))
            try:
                rect = Rectangle(a, b, c, d)
                print(measure(v, rect))
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
        elif cmd == "ranks":
            s, t = _parse_real(args.s), _parse_real(args.t)
            if s >= t:
                raise UsageError("ranks needs s < t")
            ranks = limiting_ranks(v, s, t)
            print(f"rk[st] {ranks.closed_closed}")
            print(f"rk[st) {ranks.closed_open}")
            print(f"rk(st] {ranks.open_closed}")
            print(f"rk(st) {ranks.open_open}")
            print(f"rk_st {strict_rank(v, s, t)}")
        return 0

    v = parse_module_file(args.file1)
    w = parse_module_file(args.file2)
    if cmd == "ob-iso":
        same = ob_isomorphic(v, w)
        print("yes" if same else "no")
        return 0 if same else 1
    value, witness = bottleneck(diagram(v), diagram(w))
    print(f"value {_format_value(value)}")
    _print_matching(witness)
    if cmd == "interleave":
        if value == POS_INF:
            print("verified no")
        else:
            il = build_interleaving(v, w, witness, value)
            ok = verify_interleaving(v, w, il)
            print(f"verified {'yes' if ok else 'no'}")
    return 0


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    try:
        return _run(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except ModuleFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
