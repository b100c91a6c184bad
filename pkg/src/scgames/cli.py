"""Command line front end.

One verb per task: print a value, compare two games, test a predicate,
evaluate or emit board files, rebuild the value census, or re-check the
shipped value table.  Everything reads and writes the brace notation,
ASCII by default.

Exit codes are script-friendly: 0 for success, 1 when a predicate comes
out false or a verification fails, 2 for unusable input (syntax errors,
unknown posets or atoms, missing or malformed files, caps exceeded).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .catalog import build_catalog, catalog_to_json, load_fixture, \
    verify_appendix
from .games import SolverContext, is_monotone, is_passable, leq, equiv, \
    simplify, to_notation
from .notation import parse_game
from .poset import UnknownPoset, builtin, poset_from_json
from .realize import DEFAULT_VERIFY_CAP, NotPassable, VerificationFailed, \
    realize
from .setcolor import DEFAULT_EVAL_CAP, eval_board, load_board, save_board


def _load_poset(spec: str):
    """A builtin name, or a JSON file describing the poset."""
    try:
        return builtin(spec)
    except UnknownPoset:
        pass
    p = Path(spec)
    if p.exists():
        return poset_from_json(json.loads(p.read_text()))
    raise UnknownPoset(f"{spec!r} is neither a builtin poset nor a file")


def _parse(args, text):
    return parse_game(text, _load_poset(args.poset))


def cmd_value(args) -> int:
    ctx = SolverContext()
    if args.game.endswith(".scg") or Path(args.game).exists():
        v = eval_board(ctx, load_board(args.game), max_cells=args.max_cells)
    else:
        v = simplify(ctx, _parse(args, args.game))
    print(to_notation(v, unicode=args.unicode))
    return 0


def cmd_leq(args) -> int:
    ctx = SolverContext()
    res = leq(ctx, _parse(args, args.left), _parse(args, args.right))
    print("true" if res else "false")
    return 0 if res else 1


def cmd_equiv(args) -> int:
    ctx = SolverContext()
    res = equiv(ctx, _parse(args, args.left), _parse(args, args.right))
    print("true" if res else "false")
    return 0 if res else 1


def cmd_check(args) -> int:
    ctx = SolverContext()
    G = _parse(args, args.game)
    res = is_passable(ctx, G) if args.passable else is_monotone(ctx, G)
    print("true" if res else "false")
    return 0 if res else 1


def cmd_eval(args) -> int:
    ctx = SolverContext()
    v = eval_board(ctx, load_board(args.board), max_cells=args.max_cells)
    print(to_notation(v, unicode=args.unicode))
    return 0


def cmd_realize(args) -> int:
    ctx = SolverContext()
    report = realize(ctx, _parse(args, args.game),
                     verify_value=args.verify, verify_cap=args.max_cells)
    if args.out:
        save_board(report.board, args.out)
        print(f"board -> {args.out}", file=sys.stderr)
    print(json.dumps(report.to_json(), indent=2))
    return 0


def cmd_verify_appendix(args) -> int:
    report = verify_appendix(SolverContext(), load_fixture(args.fixture))
    for c in report.checks:
        line = f"{' ok ' if c.ok else 'FAIL'}  {c.cells}  {c.claimed}"
        if not c.ok:
            line += f"  ->  {c.got}"
        print(line)
    passed = sum(c.ok for c in report.checks)
    print(f"{passed}/{len(report.checks)} boards check out")
    return 0 if report.ok else 1


def cmd_catalog(args) -> int:
    cat = build_catalog(SolverContext(), args.n)
    text = json.dumps(catalog_to_json(cat), indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
        print(f"{len(cat)} values -> {args.out}")
    else:
        print(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="scgames",
        description="Game values, set coloring boards, and realizations.")
    ap.add_argument("--seed", type=int, default=None,
                    help="accepted for script compatibility; every command "
                         "here is deterministic")
    sub = ap.add_subparsers(dest="verb", required=True)

    poset_flag = argparse.ArgumentParser(add_help=False)
    poset_flag.add_argument("--poset", default="P4",
                            help="builtin poset name or a JSON poset file "
                                 "(default P4)")
    uni_flag = argparse.ArgumentParser(add_help=False)
    uni_flag.add_argument("--unicode", action="store_true",
                          help="print top/bot as symbols")

    p = sub.add_parser("value", parents=[poset_flag, uni_flag],
                       help="simplified value of a notation or a .scg board")
    p.add_argument("game", help="game notation, or a board file")
    p.add_argument("--max-cells", type=int, default=DEFAULT_EVAL_CAP)
    p.set_defaults(fn=cmd_value)

    p = sub.add_parser("leq", parents=[poset_flag],
                       help="is the first game below the second")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(fn=cmd_leq)

    p = sub.add_parser("equiv", parents=[poset_flag],
                       help="are the two games equivalent")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(fn=cmd_equiv)

    p = sub.add_parser("check", parents=[poset_flag],
                       help="test a game predicate")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--passable", action="store_true")
    which.add_argument("--monotone", action="store_true")
    p.add_argument("game")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("eval", parents=[uni_flag],
                       help="evaluate a .scg board file")
    p.add_argument("board")
    p.add_argument("--max-cells", type=int, default=DEFAULT_EVAL_CAP)
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("realize", parents=[poset_flag],
                       help="build a board realizing a passable game")
    p.add_argument("game")
    p.add_argument("--verify", action="store_true",
                   help="re-evaluate the board and compare with the input")
    p.add_argument("-o", "--out", default=None, help="write the board here")
    p.add_argument("--max-cells", type=int, default=DEFAULT_VERIFY_CAP,
                   help="carrier cap for brute-force verification")
    p.set_defaults(fn=cmd_realize)

    p = sub.add_parser("verify-appendix",
                       help="re-evaluate the printed boards of a value table")
    p.add_argument("fixture", nargs="?", default=None,
                   help="table JSON (default: the shipped one)")
    p.set_defaults(fn=cmd_verify_appendix)

    p = sub.add_parser("catalog",
                       help="census of all boards up to a cell count")
    p.add_argument("-n", type=int, required=True, dest="n")
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(fn=cmd_catalog)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except NotPassable as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except VerificationFailed as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
