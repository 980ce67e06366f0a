"""Command line interface: problem files, counts, tables and SVG pictures.

Problem files are UTF-8 JSON::

    {"degree": [{"dir": [-1, 0], "count": 1},
                {"dir": [0, -1], "count": 1, "fixed": true, "offset": "1/2"},
                {"dir": [1, 1], "count": 1}],
     "real_points": [["0", "0"]],
     "complex_points": [],
     "mode": "broccoli", "seed": 7, "box": 1000}

Rationals are strings ``"p"`` or ``"p/q"`` so that nothing passes through a
float.  Exit codes: 2 for usage and input errors, 3 when no generic
conditions are found, 4 when a long run is refused.
"""
import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .ch import InvalidKey, atomic_write, ch_invariant, default_engine, degree_table, make_key
from .curve import END, REAL, Degree, End, InvalidClass
from .enumerate import (DEFAULT_BOX, MODES, CountReport, DimensionMismatch, GenericityExhausted,
                        GenericityFault, Problem, count_generic, count_invariant,
                        invariance_experiment)
from .geometry import Conditions
from .lattice import InvalidDirection, format_rational, parse_rational, primitive, vec
from .seq import format_seq, parse_seq

EXIT_USAGE = 2
EXIT_GENERICITY = 3
EXIT_LONG = 4

# problems with more ends than this need --allow-long
LONG_RUN_ENDS = 8


class ProblemError(ValueError):
    """A problem file that cannot be turned into a Problem."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


# ------------------------------------------------------------ problem files

def _rational(value, path: str) -> Fraction:
    try:
        return parse_rational(value)
    except ValueError as exc:
        raise ProblemError(path, str(exc)) from None


def _int(value, path: str, low: Optional[int] = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ProblemError(path, f"expected an integer, got {value!r}")
    if low is not None and value < low:
        raise ProblemError(path, f"must be at least {low}")
    return value


def _points(doc, key: str):
    pts = doc.get(key, [])
    if not isinstance(pts, list):
        raise ProblemError(key, "expected a list of points")
    out = []
    for i, p in enumerate(pts):
        if not isinstance(p, list) or len(p) != 2:
            raise ProblemError(f"{key}[{i}]", "a point is a pair of rationals")
        out.append((_rational(p[0], f"{key}[{i}][0]"), _rational(p[1], f"{key}[{i}][1]")))
    return tuple(out)


def _degree(doc) -> Degree:
    entries = doc.get("degree")
    if not isinstance(entries, list) or not entries:
        raise ProblemError("degree", "expected a non-empty list of end classes")
    ends = []
    for i, item in enumerate(entries):
        path = f"degree[{i}]"
        if not isinstance(item, dict):
            raise ProblemError(path, "expected an object")
        unknown = set(item) - {"dir", "count", "fixed", "offset"}
        if unknown:
            raise ProblemError(path, f"unknown keys {sorted(unknown)}")
        d = item.get("dir")
        if not isinstance(d, list) or len(d) != 2:
            raise ProblemError(f"{path}.dir", "expected [x, y]")
        x, y = _int(d[0], f"{path}.dir[0]"), _int(d[1], f"{path}.dir[1]")
        if x == 0 and y == 0:
            raise ProblemError(f"{path}.dir", "direction must be nonzero")
        count = _int(item.get("count", 1), f"{path}.count", low=1)
        fixed = item.get("fixed", False)
        if not isinstance(fixed, bool):
            raise ProblemError(f"{path}.fixed", "expected true or false")
        if "offset" in item and not fixed:
            raise ProblemError(f"{path}.offset", f"offset given for non-fixed end {i}")
        if fixed and "offset" not in item:
            raise ProblemError(f"{path}.offset", f"fixed end {i} needs an offset")
        offs = [None] * count
        if fixed:
            raw = item["offset"]
            if isinstance(raw, list):
                if len(raw) != count:
                    raise ProblemError(f"{path}.offset", f"need {count} offsets")
                offs = [_rational(v, f"{path}.offset[{k}]") for k, v in enumerate(raw)]
            else:
                offs = [_rational(raw, f"{path}.offset")] * count
        for off in offs:
            ends.append(End(vec((x, y)), fixed, off))
    # canonical order: fixed ends first, then by direction
    ends.sort(key=lambda e: (not e.fixed, e.direction, e.offset or 0))
    try:
        return Degree(tuple(ends))
    except (InvalidClass, InvalidDirection) as exc:
        raise ProblemError("degree", str(exc)) from None


def load_problem_doc(doc, template: bool = False) -> Problem:
    """Build a Problem from a decoded JSON document.

    With ``template``, or when the document has a ``seed``, the point lists
    only fix how many markings there are; conditions are then drawn from the
    seed when counting.
    """
    if not isinstance(doc, dict):
        raise ProblemError("$", "expected a JSON object")
    unknown = set(doc) - {"degree", "real_points", "complex_points", "mode", "seed", "box"}
    if unknown:
        raise ProblemError("$", f"unknown keys {sorted(unknown)}")
    degree = _degree(doc)
    mode = doc.get("mode", "broccoli")
    if mode not in MODES:
        raise ProblemError("mode", f"expected one of {', '.join(MODES)}")
    if "seed" in doc:
        _int(doc["seed"], "seed")
    if "box" in doc:
        _int(doc["box"], "box", low=1)
    seed = doc.get("seed")
    if template or seed is not None:
        r = len(doc.get("real_points", []))
        s = len(doc.get("complex_points", []))
        real = tuple((Fraction(i), Fraction(0)) for i in range(r))
        cplx = tuple((Fraction(i), Fraction(1)) for i in range(s))
    else:
        real, cplx = _points(doc, "real_points"), _points(doc, "complex_points")
    offs = tuple(degree.ends[i].offset for i in degree.fixed)
    try:
        return Problem(degree, mode, Conditions(real, cplx, offs), seed, doc.get("box", DEFAULT_BOX))
    except DimensionMismatch as exc:
        raise ProblemError("$", f"DimensionMismatch: {exc}") from None


def parse_problem(path: str, template: bool = False) -> Problem:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ProblemError("$", f"malformed JSON ({exc})") from None
    except (OSError, UnicodeDecodeError) as exc:
        raise ProblemError("$", f"cannot read {path} ({exc})") from None
    return load_problem_doc(doc, template)


def problem_doc(problem: Problem) -> dict:
    """Inverse of :func:`load_problem_doc`, one degree entry per end."""
    cond = problem.conditions
    ends = []
    for e in problem.degree.ends:
        item = {"dir": [e.direction.x, e.direction.y], "count": 1}
        if e.fixed:
            item["fixed"] = True
            item["offset"] = format_rational(e.offset)
        ends.append(item)
    if cond.fixed_offsets:
        for i, off in zip(problem.degree.fixed, cond.fixed_offsets):
            ends[i]["offset"] = format_rational(off)
    pts = lambda ps: [[format_rational(x), format_rational(y)] for x, y in ps]
    return {"degree": ends, "real_points": pts(cond.real_points),
            "complex_points": pts(cond.complex_points), "mode": problem.mode}


# ------------------------------------------------------------------- output

def format_report(report: CountReport, listing: bool = False) -> str:
    lines = [f"mode: {report.mode}",
             f"value: {format_rational(report.value)}",
             f"curves: {len(report.curves)}"]
    stats = ", ".join(f"{k}={v}" for k, v in sorted(report.stats.items()))
    lines.append(f"search: {stats}")
    if report.conditions is not None:
        cond = report.conditions
        fmt = lambda ps: " ".join(f"({format_rational(x)},{format_rational(y)})" for x, y in ps)
        if cond.real_points:
            lines.append(f"real points: {fmt(cond.real_points)}")
        if cond.complex_points:
            lines.append(f"complex points: {fmt(cond.complex_points)}")
        if cond.fixed_offsets:
            lines.append("fixed offsets: " + " ".join(map(format_rational, cond.fixed_offsets)))
    if listing:
        for rec in report.curves:
            tags = " ".join(f"{k}:{v}" for k, v in sorted(rec.tags.items()))
            lines.append(f"{format_rational(rec.multiplicity)}\t{tags}\t{rec.encoding}")
    return "\n".join(lines) + "\n"


def row_label(alpha, beta) -> str:
    return f"({format_seq(alpha)}),({format_seq(beta)})"


def format_table(d: int, fmt: str = "text") -> str:
    rows = degree_table(d)
    width = max(len(v) for _, _, v in rows)
    cells = [[row_label(a, b)] + [format_rational(v) for v in vals] + [""] * (width - len(vals))
             for a, b, vals in rows]
    header = ["row"] + [f"s={s}" for s in range(width)]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(cells)
        return buf.getvalue()
    cols = list(zip(header, *cells))
    widths = [max(len(c) for c in col) for col in cols]
    out = []
    for line in [header] + cells:
        out.append("  ".join(c.rjust(w) if i else c.ljust(w)
                             for i, (c, w) in enumerate(zip(line, widths))).rstrip())
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------- SVG

def _bbox(report: CountReport):
    xs, ys = [], []
    for rec in report.curves:
        for x, y in rec.placement.positions.values():
            xs.append(x)
            ys.append(y)
    cond = report.conditions
    if cond is not None:
        for x, y in cond.real_points + cond.complex_points:
            xs.append(x)
            ys.append(y)
    if not xs:
        return None
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    wx = (x1 - x0) or Fraction(1)
    wy = (y1 - y0) or Fraction(1)
    padx, pady = wx / 5, wy / 5
    return (x0 - padx, y0 - pady, x1 + padx, y1 + pady)


def _clip(p, d, box):
    """Where the ray from ``p`` in direction ``d`` leaves ``box``."""
    x0, y0, x1, y1 = box
    ts = []
    if d.x:
        ts.append(((x1 if d.x > 0 else x0) - p[0]) / d.x)
    if d.y:
        ts.append(((y1 if d.y > 0 else y0) - p[1]) / d.y)
    t = max(Fraction(0), min(ts))
    return (p[0] + t * d.x, p[1] + t * d.y)


def _num(q) -> str:
    s = f"{float(q):.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def render_svg(report: CountReport, bbox=None, panel: int = 240) -> str:
    """One panel per curve: thin odd edges, thick even edges, dots for markings."""
    box = bbox if bbox is not None else _bbox(report)
    n = len(report.curves)
    head = ('<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{max(n, 1) * panel}" '
            f'height="{panel}" viewBox="0 0 {max(n, 1) * panel} {panel}">\n')
    if not n or box is None:
        return head + "</svg>\n"
    x0, y0, x1, y1 = (Fraction(v) for v in box)
    scale = min(Fraction(panel) / (x1 - x0), Fraction(panel) / (y1 - y0))

    def pt(p):
        return _num((p[0] - x0) * scale), _num((y1 - p[1]) * scale)

    parts = [head]
    for k, rec in enumerate(report.curves):
        t, pos = rec.placement.type, rec.placement.positions
        parts.append(f'<g id="curve{k}" transform="translate({k * panel},0)" '
                     'stroke="black" fill="none">\n')
        parts.append(f'<rect x="0" y="0" width="{panel}" height="{panel}" stroke="#ccc"/>\n')
        dots = []
        for a, b in sorted(t.edges()):
            if a in t.leaves:
                a, b = b, a
            d = t.direction(a, b)
            width = 3 if d.x % 2 == 0 and d.y % 2 == 0 and not d.is_zero() else 1
            if b in t.leaves:
                kind, idx = t.leaves[b]
                if kind != END:
                    radius = 2 if kind == REAL else 4
                    cx, cy = pt(pos[a])
                    dots.append(f'<circle cx="{cx}" cy="{cy}" r="{radius}" fill="black"/>\n')
                    continue
                q = _clip(pos[a], d, (x0, y0, x1, y1))
            else:
                q = pos[b]
            (ax, ay), (bx, by) = pt(pos[a]), pt(q)
            parts.append(f'<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" stroke-width="{width}"/>\n')
            if b in t.leaves and t.degree.ends[t.leaves[b][1]].fixed:
                u = primitive(d)
                norm = float(u.x * u.x + u.y * u.y) ** 0.5
                ox, oy = -u.y / norm * 5, -u.x / norm * 5
                fx, fy = float(bx), float(by)
                parts.append(f'<line class="fixed" x1="{_num(fx - ox)}" y1="{_num(fy - oy)}" '
                             f'x2="{_num(fx + ox)}" y2="{_num(fy + oy)}" stroke-width="1"/>\n')
        parts.extend(dots)
        parts.append("</g>\n")
    parts.append("</svg>\n")
    return "".join(parts)


# ---------------------------------------------------------------- commands

def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tropicount", description="Exact counts of rational tropical curves.")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("invariant", help="one relative invariant N^d(alpha, beta, s)")
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--alpha", default="0")
    q.add_argument("--beta", default="0")
    q.add_argument("--s", type=int, default=0)

    q = sub.add_parser("table", help="all invariants of one degree")
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--format", choices=("text", "csv"), default="text")
    q.add_argument("--output", "-o")

    q = sub.add_parser("enumerate", help="count curves of a problem file")
    q.add_argument("--problem", required=True)
    q.add_argument("--list", action="store_true", help="print every curve")
    q.add_argument("--svg", help="write a picture of the curves")
    q.add_argument("--allow-long", action="store_true")
    q.add_argument("--output", "-o")

    q = sub.add_parser("invariance", help="count through several random configurations")
    q.add_argument("--problem-template", required=True)
    q.add_argument("--trials", type=int, default=5)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--box", type=int)
    q.add_argument("--allow-long", action="store_true")

    sub.add_parser("version", help="print the version")
    return p


def _emit(text: str, path: Optional[str], out) -> None:
    if path:
        atomic_write(path, text)
    else:
        out.write(text)


def _long_guard(problem: Problem, allowed: bool, err) -> bool:
    if problem.degree.n > LONG_RUN_ENDS and not allowed:
        err.write(f"error: {problem.degree.n} ends is a long run; pass --allow-long\n")
        return False
    return True


def run_command(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "version":
            out.write(f"tropicount {__version__}\n")
        elif args.command == "invariant":
            key = make_key(args.d, parse_seq(args.alpha), parse_seq(args.beta), args.s)
            out.write(format_rational(ch_invariant(key)) + "\n")
            default_engine().save()
        elif args.command == "table":
            _emit(format_table(args.d, args.format), args.output, out)
            default_engine().save()
        elif args.command == "enumerate":
            problem = parse_problem(args.problem)
            if not _long_guard(problem, args.allow_long, err):
                return EXIT_LONG
            if problem.seed is None:
                report = count_invariant(problem)
            else:
                report = count_generic(problem.degree, problem.mode, problem.seed, problem.box)
            if args.svg:
                atomic_write(args.svg, render_svg(report))
            _emit(format_report(report, args.list), args.output, out)
        elif args.command == "invariance":
            problem = parse_problem(args.problem_template, template=True)
            if not _long_guard(problem, args.allow_long, err):
                return EXIT_LONG
            box = args.box or problem.box
            rep = invariance_experiment(problem.degree, problem.mode, args.trials, args.seed, box)
            lines = [f"trial {i}\tseed {sd}\t{format_rational(v)}"
                     for i, (sd, v) in enumerate(zip(rep.seeds, rep.values))]
            lines.append("verdict: " + ("constant" if rep.constant else "varies"))
            out.write("\n".join(lines) + "\n")
    except (ProblemError, InvalidKey, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (GenericityExhausted, GenericityFault) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_GENERICITY
    return 0


def main() -> None:
    sys.exit(run_command())
