"""Command-line interface.

Every subcommand accepts --format {csv,json,text} and --out PATH (default
stdout; relative paths are resolved against $MARKOVTREE_OUT when set).
Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import cycles as cyc
from . import squares as sq
from .edges import Side, edge_region
from .errors import MarkovError
from .farey import farey_edge_sequence, farey_for_region, plot_rows
from .pell import generate_solutions, solve_pell_brute, uniqueness_check
from .render import render_object, render_rows
from .tree import DEFAULT_MAX_DIGITS, DEFAULT_MAX_NODES, markov_list, tree_rows

_SIDES = {"L": Side.LEFT, "R": Side.RIGHT}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json", "text"), default="text")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.add_argument("--max-digits", type=int, default=DEFAULT_MAX_DIGITS)
    p.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="markovtree",
        description="Markov tree triplets, edge sequences, Pell solutions, "
                    "digit cycles, special squares and Farey indexing.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tree", help="export the canonical triplet list")
    p.add_argument("--depth", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("edge", help="edge region numbers of one region")
    p.add_argument("--region", type=int, required=True)
    p.add_argument("--side", choices=("L", "R"), required=True)
    p.add_argument("--from", dest="start", type=int, default=0)
    p.add_argument("--to", dest="end", type=int, default=8)
    _add_common(p)

    p = sub.add_parser("pell", help="Pell solutions for a region parameter")
    p.add_argument("--region", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--brute-bound", type=int, default=None)
    g.add_argument("--generate", type=int, default=None)
    g.add_argument("--verify", action="store_true")
    p.add_argument("--bound", type=int, default=None,
                   help="override the --verify search bound")
    _add_common(p)

    p = sub.add_parser("cycles", help="last-digit repeat cycles along edges")
    p.add_argument("--region", type=int, required=True)
    p.add_argument("--digits", type=int, required=True)
    p.add_argument("--palindrome", action="store_true")
    p.add_argument("--structure", action="store_true")
    p.add_argument("--side", choices=("L", "R"), default="L")
    _add_common(p)

    p = sub.add_parser("freq", help="frequency of region-number residues")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--digits", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("squares", help="special square terms along edges")
    p.add_argument("--region", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--lists", action="store_true")
    g.add_argument("--ksf", default=None, metavar="A..B",
                   help="sequence values for indices A..B (nonzero)")
    g.add_argument("--oscillation", type=int, default=None, metavar="N")
    _add_common(p)

    p = sub.add_parser("farey", help="Farey triplets and plot data")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--region", type=int, default=None)
    g.add_argument("--plot-depth", type=int, default=None)
    _add_common(p)

    return parser


def _emit(args, text: str) -> None:
    path = args.out
    if path is None:
        sys.stdout.write(text)
        return
    base = os.environ.get("MARKOVTREE_OUT")
    if base and not os.path.isabs(path):
        path = os.path.join(base, path)
    with open(path, "w", newline="") as fh:
        fh.write(text)


def _list_for_region(args):
    mlist = markov_list(0, args.max_nodes, args.max_digits)
    head, _ = mlist.lookup(args.region, deepen=True)
    return mlist, head


def _cmd_tree(args) -> str:
    mlist = markov_list(args.depth, args.max_nodes, args.max_digits)
    fields = ("position", "depth", "x", "R", "z", "sibling")
    return render_rows(tree_rows(mlist), fields, args.format)


def _cmd_edge(args) -> str:
    _, head = _list_for_region(args)
    side = _SIDES[args.side]
    if args.end < args.start:
        raise MarkovError(f"empty index range {args.start}..{args.end}")
    rows = [
        {"n": n, "region": edge_region(head, side, n, args.max_digits)}
        for n in range(args.start, args.end + 1)
    ]
    return render_rows(rows, ("n", "region"), args.format)


def _cmd_pell(args) -> str:
    if args.brute_bound is not None:
        sols = solve_pell_brute(args.region, args.brute_bound)
        rows = [{"J": j} for j in sols]
        return render_rows(rows, ("J",), args.format)
    if args.generate is not None:
        _, head = _list_for_region(args)
        rows = [
            {"m": i, "K": s.k, "J": s.j}
            for i, s in enumerate(generate_solutions(head, args.generate))
        ]
        return render_rows(rows, ("m", "K", "J"), args.format)
    mlist, _ = _list_for_region(args)
    report = uniqueness_check(args.region, mlist, args.bound)
    obj = {
        "R": report.region,
        "bound": report.bound,
        "solutions": list(report.solutions),
        "expected": list(report.expected),
        "verdict": report.verdict,
    }
    return render_object(obj, args.format)


def _cmd_cycles(args) -> str:
    mlist, head = _list_for_region(args)
    if args.structure:
        side = _SIDES[args.side]
        info = cyc.internal_structure(head, side, args.digits)
        obj = {"R": head.r, "side": args.side}
        obj.update({k: v for k, v in vars(info).items()})
        return render_object(obj, args.format)
    if args.palindrome:
        left, right = cyc.palindromic_cycle(head, args.digits)
        if args.format == "json":
            obj = {
                "R": head.r,
                "digits": args.digits,
                "length": left.length,
                "palindromic": left.palindromic_with_opposite,
                "left": list(left.residues),
                "right": list(right.residues),
            }
            return render_object(obj, "json")
        rows = [
            {"R": head.r, "side": s, "digits": args.digits, "length": rep.length,
             "palindromic": rep.palindromic_with_opposite}
            for s, rep in (("L", left), ("R", right))
        ]
        return render_rows(rows, ("R", "side", "digits", "length", "palindromic"),
                           args.format)
    rows = [
        {"R": head.r, "side": s, "digits": args.digits,
         "length": cyc.cycle_length(head, _SIDES[s], args.digits)}
        for s in ("L", "R")
    ]
    return render_rows(rows, ("R", "side", "digits", "length"), args.format)


def _cmd_freq(args) -> str:
    counts = cyc.last_digit_frequency(args.depth, args.digits, args.max_nodes)
    rows = [{"residue": r, "count": counts[r]} for r in sorted(counts)]
    return render_rows(rows, ("residue", "count"), args.format)


def _squares_sides(head, mlist):
    if head.members == (1, 1, 1):
        return (("R", Side.RIGHT),)
    if head.members == (1, 2, 1):
        return (("L", Side.LEFT),)
    return (("L", Side.LEFT), ("R", Side.RIGHT))


def _cmd_squares(args) -> str:
    mlist, head = _list_for_region(args)
    sides = _squares_sides(head, mlist)
    if args.lists:
        obj = {"R": head.r}
        for name, side in sides:
            seeds = sq.region_edge_seeds(head, side, mlist)
            obj[name] = {
                "odd_anchor": list(seeds.odd_anchor),
                "even_anchor": list(seeds.even_anchor),
                "odd_base": list(seeds.odd_base),
                "even_base": list(seeds.even_base),
            }
        return render_object(obj, args.format)
    if args.ksf is not None:
        try:
            lo, hi = (int(v) for v in args.ksf.split("..", 1))
        except ValueError:
            raise MarkovError(f"bad index range {args.ksf!r}; expected A..B")
        rows = []
        for name, side in sides:
            seeds = sq.region_edge_seeds(head, side, mlist)
            for n in range(lo, hi + 1):
                if n == 0:
                    continue
                s, l = sq.square_pair(seeds, head.r, n)
                rows.append({"side": name, "n": n, "sigma": s, "lambda": l})
        return render_rows(rows, ("side", "n", "sigma", "lambda"), args.format)
    rows = []
    for name, side in sides:
        seeds = sq.region_edge_seeds(head, side, mlist)
        rep = sq.oscillation_report(seeds, head.r, args.oscillation)
        for n, s, l in rep.points:
            ratio = l / s if s else float("nan")
            rows.append({"side": name, "n": n, "sigma": s, "lambda": l,
                         "ratio": ratio})
    return render_rows(rows, ("side", "n", "sigma", "lambda", "ratio"), args.format)


def _cmd_farey(args) -> str:
    if args.plot_depth is not None:
        mlist = markov_list(args.plot_depth, args.max_nodes, args.max_digits)
        fields = ("farey_numerator", "farey_denominator", "farey_decimal",
                  "log10_R", "depth")
        return render_rows(plot_rows(args.plot_depth, mlist), fields, args.format)
    mlist, head = _list_for_region(args)
    ft = farey_for_region(args.region, mlist)
    row = {
        "R": args.region,
        "low": ft.low,
        "mid": ft.mid,
        "high": ft.high,
    }
    for k in (1, 2, 3):
        row[f"left_{k}"] = farey_edge_sequence(ft, Side.LEFT, k)
        row[f"right_{k}"] = farey_edge_sequence(ft, Side.RIGHT, k)
    fields = ("R", "low", "mid", "high",
              "left_1", "left_2", "left_3", "right_1", "right_2", "right_3")
    return render_rows([row], fields, args.format)


_HANDLERS = {
    "tree": _cmd_tree,
    "edge": _cmd_edge,
    "pell": _cmd_pell,
    "cycles": _cmd_cycles,
    "freq": _cmd_freq,
    "squares": _cmd_squares,
    "farey": _cmd_farey,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        text = _HANDLERS[args.command](args)
    except MarkovError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1
    _emit(args, text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
