"""Command-line front end.

Every subcommand parses its inputs, calls one library function and prints
the result.  Exit status: 0 on success, 1 when an input fails validation (or a
verification check fails), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import formats
from .bruhat import bruhat_leq, compact_tblock_witness, greedy_tblock_witness
from .core import ValidationError, format_grid, grid_notation
from .enumeration import EnumerationCapExceeded, enumerate_kind
from .hasse import hasse_for
from .lattice import dm_witness_report, join, maximum_element, meet, minimum_element
from .rank import rank_profile
from .triangles import MonotoneHypertriangle, render
from .verify import run_criteria, validity_report

KINDS = ("latin", "corner-sum", "ashm", "pashm", "triangle", "asm")
HASSE_KINDS = ("latin", "corner-sum", "ashm", "pashm", "permutation")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                   help="machine-readable output, JSON errors on stderr")
    p.add_argument("--format", choices=("json", "latin", "grid"), default=argparse.SUPPRESS,
                   help="input format (default: by extension, .json or Latin text)")
    p.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                   help="worker processes for enumeration (0 = all cores)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="hyperlattice", parents=[common],
                     description="Bruhat order on Latin squares and corner-sum hypermatrices.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        return sub.add_parser(name, help=help_, parents=[common])

    p = add("convert", "re-express an object in another form")
    p.add_argument("input")
    p.add_argument("--to", required=True, choices=formats.TARGETS)
    p.add_argument("-o", "--output")

    p = add("check", "run every validity predicate on an object")
    p.add_argument("input")

    p = add("compare", "decide A <=_B B and give a T-block witness")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--contiguous", action="store_true",
                   help="witness of single-step T-blocks instead of general ones")

    for name in ("meet", "join"):
        p = add(name, f"{name} of two elements in the corner-sum lattice")
        p.add_argument("a")
        p.add_argument("b")

    p = add("extremes", "minimum and maximum of the order-n lattice")
    p.add_argument("n", type=int)

    p = add("rank", "rho, rank and lattice rank of an element")
    p.add_argument("input")

    p = add("enumerate", "exhaustively list or count a family")
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("-o", "--output", help="write elements as JSON lines here")

    p = add("hasse", "cover graph of a family")
    p.add_argument("--kind", required=True, choices=HASSE_KINDS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dot", help="write Graphviz DOT to this path ('-' for stdout)")
    p.add_argument("--out-json", help="write the graph as JSON to this path ('-' for stdout)")
    p.add_argument("--method", choices=("auto", "probe", "reduction"), default="auto")

    p = add("dm-witness", "join-irreducible witness (n >= 4) or completion check (n = 3)")
    p.add_argument("n", type=int)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exhaustive", dest="exhaustive", action="store_true", default=None)
    g.add_argument("--probe", dest="exhaustive", action="store_false")

    p = add("verify-all", "run the reproduction checks up to order n")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--long", action="store_true", help="include the order-5 ASHM count")
    p.add_argument("--only", help="comma-separated criterion numbers")
    return parser


# ---------------------------------------------------------------------------

def _load(args, source: str):
    return formats.read_object(source, getattr(args, "format", None))


def _emit(args, obj, text: str | None = None, out: str | None = None) -> None:
    if getattr(args, "json", False):
        payload = obj if isinstance(obj, (dict, list)) else formats.to_document(obj)
        body = json.dumps(payload)
    else:
        body = text if text is not None else _text(obj)
    if out and out != "-":
        Path(out).write_text(body + "\n", encoding="utf-8")
    else:
        print(body)


def _text(obj) -> str:
    from .core import CornerSumHypermatrix, LatinSquare

    if isinstance(obj, str):
        return obj
    if isinstance(obj, LatinSquare):
        return str(obj)
    if isinstance(obj, MonotoneHypertriangle):
        return render(obj)
    if isinstance(obj, CornerSumHypermatrix):
        return format_grid(grid_notation(obj.hypermatrix()))
    if isinstance(obj, dict):
        return "\n".join(f"{k}: {v}" for k, v in obj.items())
    return formats.dumps(obj)


def cmd_convert(args) -> int:
    res = formats.convert(_load(args, args.input), args.to)
    if isinstance(res, str):
        _emit(args, {"kind": "grid", "text": res}, res, args.output)
    else:
        _emit(args, res, formats.dumps(res) if args.to in ("hypermatrix", "corner-sum", "matrix")
              else None, args.output)
    return 0


def cmd_check(args) -> int:
    fmt = getattr(args, "format", None)
    try:
        obj = _load(args, args.input)
    except ValidationError as exc:
        if exc.location is None or fmt not in (None, "latin"):
            raise
        text = Path(args.input).read_text() if Path(args.input).is_file() else args.input
        obj = formats.parse_grid_text(text)
    rep = validity_report(obj)
    if getattr(args, "json", False):
        print(json.dumps(rep))
    else:
        print(f"{rep['kind']} of order {rep['n']}: {'valid' if rep['valid'] else 'INVALID'}")
        for name, ok in rep["predicates"].items():
            print(f"  {name}: {'yes' if ok else 'no'}")
        for v in rep["violations"]:
            loc = f" at {tuple(v['location'])}" if v["location"] else ""
            print(f"  violation ({v['predicate']}){loc}: {v['message']}")
    return 0 if rep["valid"] else 1


def cmd_compare(args) -> int:
    a, b = _load(args, args.a), _load(args, args.b)
    le, ge = bruhat_leq(a, b), bruhat_leq(b, a)
    find = greedy_tblock_witness if args.contiguous else compact_tblock_witness
    if le and ge:
        verdict, w = "A = B", None
    elif le:
        verdict, w = "A ≼_B B", find(a, b)
    elif ge:
        verdict, w = "B ≼_B A", find(b, a)
    else:
        verdict, w = "A and B are incomparable", None
    rep = {"verdict": verdict, "witness": w.as_dict() if w else None}
    lines = [verdict]
    if w:
        lines.append(f"witness: {len(w.blocks)} positive T-block(s) applied to the upper element")
        for t in w.blocks:
            lines.append("  rows {}<{} cols {}<{} planes {}<{}".format(*t.as_list()[:6]))
    _emit(args, rep, "\n".join(lines))
    return 0


def _lattice_op(args, op) -> int:
    res = op(_load(args, args.a), _load(args, args.b))
    _emit(args, res)
    return 0


def cmd_extremes(args) -> int:
    lo, hi = minimum_element(args.n), maximum_element(args.n)
    rep = {"minimum": formats.to_document(lo), "maximum": formats.to_document(hi)}
    _emit(args, rep, f"minimum:\n{_text(lo)}\nmaximum:\n{_text(hi)}")
    return 0


def cmd_rank(args) -> int:
    prof = rank_profile(_load(args, args.input)).as_dict()
    _emit(args, prof)
    return 0


def cmd_enumerate(args) -> int:
    res = enumerate_kind(args.kind, args.n, args.count_only or False, getattr(args, "threads", None))
    if args.count_only:
        _emit(args, {"kind": args.kind, "n": args.n, "count": res.count}, str(res.count))
        return 0
    objs = res.objects() if res.wrap else list(res.elements)
    if args.output:
        formats.dump_jsonl(objs, args.output)
        print(res.count)
    else:
        for o in objs:
            print(formats.dumps(o))
    return 0


def cmd_hasse(args) -> int:
    h = hasse_for(args.kind, args.n, args.method)
    if args.dot:
        _write(args.dot, h.to_dot(f"{args.kind.replace('-', '_')}_{args.n}"))
    if args.out_json:
        _write(args.out_json, h.dumps() + "\n")
    if args.dot != "-" and args.out_json != "-":
        summary = {"kind": args.kind, "n": args.n, "nodes": len(h.nodes), "edges": len(h.edges),
                   "max_rank": max(h.ranks) if h.ranks else 0, "graded": h.is_graded()}
        _emit(args, summary)
    return 0


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def cmd_dm_witness(args) -> int:
    rep = dm_witness_report(args.n, args.exhaustive)
    _emit(args, rep, json.dumps(rep, indent=2))
    key = "completion_holds" if args.n == 3 else "witness_confirmed"
    return 0 if rep[key] else 1


def cmd_verify_all(args) -> int:
    only = [int(x) for x in args.only.split(",")] if args.only else None
    results = run_criteria(args.n, args.long, only)
    if getattr(args, "json", False):
        print(json.dumps([r.as_dict() for r in results]))
    else:
        for r in results:
            print(r.line())
    return 0 if all(r.passed for r in results) else 1


COMMANDS = {
    "convert": cmd_convert,
    "check": cmd_check,
    "compare": cmd_compare,
    "meet": lambda a: _lattice_op(a, meet),
    "join": lambda a: _lattice_op(a, join),
    "extremes": cmd_extremes,
    "rank": cmd_rank,
    "enumerate": cmd_enumerate,
    "hasse": cmd_hasse,
    "dm-witness": cmd_dm_witness,
    "verify-all": cmd_verify_all,
}


def _fail(code: int, kind: str, message: str, as_json: bool, location=None) -> int:
    if as_json:
        err = {"error": kind, "message": message}
        if location is not None:
            err["location"] = list(location)
        print(json.dumps(err), file=sys.stderr)
    else:
        loc = f" at {tuple(location)}" if location is not None else ""
        print(f"error: {message}{loc}", file=sys.stderr)
    return code


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        return _fail(2, "usage", str(exc), as_json)
    except ValidationError as exc:
        return _fail(1, "validation", str(exc), as_json, exc.location)
    except (EnumerationCapExceeded, FileNotFoundError, IndexError) as exc:
        return _fail(2, "usage", str(exc), as_json)
    except ValueError as exc:
        return _fail(2, "usage", str(exc), as_json)


def main(argv=None) -> int:
    try:
        return run(argv)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
