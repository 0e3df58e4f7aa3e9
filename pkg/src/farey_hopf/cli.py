"""Command-line entry point: ``farey-hopf`` / ``python -m farey_hopf``.

Exit codes: 0 success, 1 I/O failure, 2 usage or domain error, 3 oracle mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from typing import Sequence

from .classify import HopfCase, HopfRep, MountainRange, enumerate_reps, mountain_range
from .decorated import DecorationClass
from .farey import acw_neighbor, cw_neighbor, farey_sum, minimal_path, neg_cf_expand, parse_slope
from .surgery import build_diagram, render

EXIT_OK, EXIT_IO, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2, 3

REP_COLUMNS = ["index", "class", "tb1", "tb2", "rot1", "rot2", "euler", "loose1", "loose2"]
FEATURE_COLUMNS = ["type", "rot", "tb", "euler", "derived"]
WING_DEPTH = 4


class UsageError(Exception):
    """Domain error reported with exit code 2."""


def write_output(text: str, dest: str | None) -> None:
    """Write to stdout, or atomically to ``dest`` via a sibling temp file."""
    if dest is None or dest == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(dest))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(dest))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, dest)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _class_text(cls: DecorationClass) -> str:
    return " ".join(f"{n}:{m}" for n, m in zip(cls.lengths, cls.negatives))


def parse_class(text: str) -> DecorationClass:
    """``"3:1 2:0"`` means two blocks of lengths 3 and 2 with 1 and 0 negative signs."""
    try:
        pairs = [tuple(int(x) for x in tok.split(":")) for tok in text.replace(",", " ").split()]
        return DecorationClass(tuple(n for n, _ in pairs), tuple(m for _, m in pairs))
    except ValueError as exc:
        raise UsageError(f"bad class {text!r}: {exc}") from exc


def _rep_row(i: int, r: HopfRep) -> list[str]:
    return [
        str(i),
        _class_text(r.cls),
        str(r.tb1),
        str(r.tb2),
        str(r.rot1),
        str(r.rot2),
        str(r.euler),
        "loose" if r.loose1 else "non-loose",
        "loose" if r.loose2 else "non-loose",
    ]


def format_table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [max([len(h)] + [len(row[i]) for row in rows]) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows]
    return "\n".join(lines) + "\n"


def format_csv(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# --- enumerate ---------------------------------------------------------------------


def cmd_enumerate(args: argparse.Namespace) -> int:
    if args.format == "svg":
        raise UsageError("svg output is only available for mountain and surgery")
    reps = enumerate_reps(args.p, args.q, HopfCase.parse(args.case), args.k1, args.k2)
    rows = [_rep_row(i, r) for i, r in enumerate(reps)]
    if args.format == "json":
        text = _dump([r.to_json() for r in reps])
    elif args.format == "csv":
        text = format_csv(REP_COLUMNS, rows)
    else:
        text = format_table(REP_COLUMNS, rows)
    write_output(text, args.out)
    return EXIT_OK


# --- mountain ----------------------------------------------------------------------


def _feature_rows(mr: MountainRange) -> list[list[str]]:
    return [
        [f.kind, str(r), str(t), " ".join(str(e) for e in f.euler), str(f.derived).lower()]
        for f in mr.features
        for r, t in f.base
    ]


# Direction of the unstabilized preimages from a base, per stabilization sign.
_WINGS = {"V": (1, -1), "forward": (-1,), "back": (1,)}


def mountain_svg(mr: MountainRange, depth: int = WING_DEPTH) -> str:
    """Scatter of feature bases in the (rot, tb) plane with truncated wing rays."""
    segs: list[tuple[float, float, float, float, str]] = []
    dots: list[tuple[float, float, str]] = []
    for f in mr.features:
        for r, t in f.base:
            x, y = float(r), float(t)
            if f.kind == "cone":
                for dx in (1, -1):
                    segs.append((x, y, x + dx * depth, y - depth, "cone"))
            for s in _WINGS.get(f.kind, ()):
                # A base reached by S_s has its preimage at rot - s, tb + 1.
                segs.append((x, y, x - s * depth, y + depth, f.kind))
            dots.append((x, y, f.kind))
    xs = [v for a, b, c, d, _ in segs for v in (a, c)] + [x for x, _, _ in dots] or [0.0]
    ys = [v for a, b, c, d, _ in segs for v in (b, d)] + [y for _, y, _ in dots] or [0.0]
    x0, x1, y0, y1 = min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1
    scale = 40.0
    width, height = (x1 - x0) * scale, (y1 - y0) * scale

    def px(x: float) -> float:
        return round((x - x0) * scale, 2)

    def py(y: float) -> float:
        return round((y1 - y) * scale, 2)

    colors = {"V": "#1f5fa8", "forward": "#2b8a3e", "back": "#b5462b", "cone": "#888888"}
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0f}" height="{height:.0f}">',
        f"<title>L({mr.p},{mr.q}) {mr.case.value} fixed L{mr.fixed} k={mr.k_fixed}</title>",
        f'<line x1="{px(0)}" y1="0" x2="{px(0)}" y2="{height:.0f}" stroke="#dddddd"/>',
        f'<line x1="0" y1="{py(0)}" x2="{width:.0f}" y2="{py(0)}" stroke="#dddddd"/>',
    ]
    for a, b, c, d, kind in segs:
        dash = ' stroke-dasharray="4 3"' if kind == "cone" else ""
        out.append(f'<line x1="{px(a)}" y1="{py(b)}" x2="{px(c)}" y2="{py(d)}" stroke="{colors[kind]}"{dash}/>')
    for x, y, kind in dots:
        out.append(f'<circle cx="{px(x)}" cy="{py(y)}" r="3" fill="{colors[kind]}"><title>{kind}</title></circle>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def cmd_mountain(args: argparse.Namespace) -> int:
    mr = mountain_range(args.p, args.q, args.fix, args.k, HopfCase.parse(args.case), bound=args.bound)
    if args.svg:
        write_output(mountain_svg(mr), args.svg)
    if args.format == "svg":
        text = mountain_svg(mr)
    elif args.format == "json":
        text = _dump(mr.to_json())
    elif args.format == "csv":
        text = format_csv(FEATURE_COLUMNS, _feature_rows(mr))
    else:
        counts = ", ".join(f"{k}: {mr.count(k)}" for k in ("V", "forward", "back", "cone"))
        text = format_table(FEATURE_COLUMNS, _feature_rows(mr)) + counts + "\n"
    if not args.svg or args.out:
        write_output(text, args.out)
    return EXIT_OK


# --- surgery -----------------------------------------------------------------------


def cmd_surgery(args: argparse.Namespace) -> int:
    reps = enumerate_reps(args.p, args.q, HopfCase.parse(args.case), args.k1, args.k2)
    if args.cls is not None:
        want = parse_class(args.cls)
        reps = [r for r in reps if r.cls == want]
        if not reps:
            raise UsageError(f"no representative with class {args.cls!r}")
    if args.index is not None:
        if not 0 <= args.index < len(reps):
            raise UsageError(f"index {args.index} outside 0..{len(reps) - 1}")
        reps = [reps[args.index]]
    diagrams = [build_diagram(r) for r in reps]
    if args.format == "svg":
        if len(diagrams) != 1:
            raise UsageError("svg needs a single diagram; select one with --index or --class")
        text = render(diagrams[0], "svg")
    elif args.format == "json":
        text = _dump([{"class": r.cls.to_json(), "diagram": d.to_json()} for r, d in zip(reps, diagrams)])
    else:
        blocks = [f"# class {_class_text(r.cls)}\n{render(d, 'ascii')}" for r, d in zip(reps, diagrams)]
        text = "\n".join(b if b.endswith("\n") else b + "\n" for b in blocks)
    write_output(text, args.out)
    return EXIT_OK


# --- selftest ----------------------------------------------------------------------


def cmd_selftest(args: argparse.Namespace) -> int:
    from .selftest import run_all

    results = run_all(args.scope, args.only)
    lines = [r.line() for r in results]
    for r in results:
        lines += [f"    {msg}" for msg in r.failures[: args.max_failures]]
    write_output("\n".join(lines) + "\n", args.out)
    return EXIT_OK if all(r.ok for r in results) else EXIT_MISMATCH


# --- farey -------------------------------------------------------------------------


def cmd_farey(args: argparse.Namespace) -> int:
    if args.op == "expand":
        text = str(neg_cf_expand(parse_slope(args.slope)))
    elif args.op == "neighbors":
        s = parse_slope(args.slope)
        text = f"c: {cw_neighbor(s)}, a: {acw_neighbor(s)}"
    elif args.op == "path":
        text = str(minimal_path(parse_slope(args.start), parse_slope(args.end)))
    else:
        text = str(farey_sum(parse_slope(args.a), parse_slope(args.b), args.k))
    write_output(text + "\n", args.out)
    return EXIT_OK


# --- parser ------------------------------------------------------------------------


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="farey-hopf", description="Non-loose Legendrian Hopf links in lens spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    def lens(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("p", type=int)
        sp.add_argument("q", type=int)

    def out(sp: argparse.ArgumentParser) -> None:
        # Slopes such as -5/2 start with a dash; this keeps them positional.
        sp.add_argument("-o", "--out", help="output file (written atomically); default stdout")

    sp = sub.add_parser("enumerate", help="list the representatives of one regime")
    lens(sp)
    sp.add_argument("--case", default="LL", help="SL, LS or LL (default LL)")
    sp.add_argument("--k1", type=_nonneg, default=0)
    sp.add_argument("--k2", type=_nonneg, default=0)
    sp.add_argument("--format", choices=["table", "json", "csv"], default="table")
    out(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("mountain", help="mountain range of one component with the other fixed")
    lens(sp)
    sp.add_argument("--fix", type=int, choices=[1, 2], required=True)
    sp.add_argument("--k", type=_nonneg, required=True)
    sp.add_argument("--case", default="LL")
    sp.add_argument("--bound", type=_nonneg, default=8, help="largest free index scanned")
    sp.add_argument("--format", choices=["table", "json", "csv", "svg"], default="table")
    sp.add_argument("--svg", metavar="PATH", help="also write an SVG plot to PATH")
    out(sp)
    sp.set_defaults(func=cmd_mountain)

    sp = sub.add_parser("surgery", help="contact surgery diagrams for one regime")
    lens(sp)
    sp.add_argument("--case", default="LL")
    sp.add_argument("--k1", type=_nonneg, default=0)
    sp.add_argument("--k2", type=_nonneg, default=0)
    sp.add_argument("--class", dest="cls", help='decoration class, e.g. "3:1 2:0" (length:negatives per block)')
    sp.add_argument("--index", type=_nonneg, help="position in the enumeration")
    sp.add_argument("--format", choices=["json", "ascii", "svg"], default="ascii")
    out(sp)
    sp.set_defaults(func=cmd_surgery)

    sp = sub.add_parser("selftest", help="replay the classification oracles")
    sp.add_argument("scope", nargs="?", choices=["fast", "full"], default="fast")
    sp.add_argument("--only", type=int, nargs="+", metavar="N", help="run only these check numbers")
    sp.add_argument("--max-failures", type=_nonneg, default=10)
    out(sp)
    sp.set_defaults(func=cmd_selftest)

    sp = sub.add_parser("farey", help="Farey graph utilities")
    fsub = sp.add_subparsers(dest="op", required=True)
    f = fsub.add_parser("expand", help="negative continued fraction of a slope < -1")
    f.add_argument("slope")
    out(f)
    f = fsub.add_parser("neighbors", help="clockwise (c) and anticlockwise (a) neighbours of a slope < -1")
    f.add_argument("slope")
    out(f)
    f = fsub.add_parser("path", help="minimal clockwise Farey path")
    f.add_argument("start")
    f.add_argument("end")
    out(f)
    f = fsub.add_parser("sum", help="iterated Farey sum of adjacent slopes")
    f.add_argument("a")
    f.add_argument("b")
    f.add_argument("--k", type=_nonneg, default=1)
    out(f)
    sp.set_defaults(func=cmd_farey)
    return parser


def _argv_with_slopes(argv: Sequence[str]) -> list[str]:
    """Keep negative slopes like ``-7/3`` positional after ``farey``."""
    argv = list(argv)
    if "farey" not in argv:
        return argv
    i = argv.index("farey")
    head, tail = argv[: i + 2], argv[i + 2 :]
    opts, pos = [], []
    j = 0
    while j < len(tail):
        tok = tail[j]
        if tok in ("-o", "--out", "--k") and j + 1 < len(tail):
            opts += [tok, tail[j + 1]]
            j += 2
            continue
        if tok.startswith("--out=") or tok.startswith("--k=") or tok in ("-h", "--help"):
            opts.append(tok)
        else:
            pos.append(tok)
        j += 1
    return head + opts + (["--"] + pos if pos else [])


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_argv_with_slopes(sys.argv[1:] if argv is None else argv))
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"farey-hopf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"farey-hopf: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
