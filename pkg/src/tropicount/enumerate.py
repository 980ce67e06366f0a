"""Enumeration of tropical curves through point and line conditions.

Cutting a curve at its markings leaves pieces that each contain exactly one
free (non-fixed) end, and orienting every piece toward that end turns it into
a binary merge tree.  Its inputs are the rays leaving markings and the lines
of fixed ends.  The search grows these trees outward from one root marking.
It intersects rays exactly, so every piece it keeps is already placed.
Results are memoized on (parent marking, content beyond it).
"""
import logging
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, Iterator, List, Optional, Tuple

from .curve import (BROCCOLI_TAGS, COMPLEX, END, REAL, WELSCHINGER_TAGS, CombType,
                    Degree, canonical_encoding, canonical_orientation,
                    classify_vertices, curve_multiplicity_gauss, derive_directions,
                    from_edges, mikhalkin_multiplicity, tag_counts, type_dimension,
                    unoriented_broccoli_check, unoriented_welschinger_check)
from .geometry import Conditions, PlacedCurve, place_curve
from .lattice import LatticeVec, det2, is_even, primitive

log = logging.getLogger(__name__)

MODES = ("broccoli", "welschinger", "complex")
DEFAULT_BOX = 10 ** 4
MAX_RESAMPLES = 32


class GenericityFault(RuntimeError):
    """The conditions are not in general position for this problem."""


class GenericityExhausted(RuntimeError):
    pass


class DimensionMismatch(ValueError):
    pass


@dataclass
class Problem:
    degree: Degree
    mode: str
    conditions: Conditions
    seed: Optional[int] = None
    box: int = DEFAULT_BOX

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        r, s = len(self.conditions.real_points), len(self.conditions.complex_points)
        if (r, s) != (self.degree.r, self.degree.s):
            self.degree = self.degree.with_markings(r, s)
        if self.conditions.fixed_offsets and len(self.conditions.fixed_offsets) != len(self.degree.fixed):
            raise DimensionMismatch("one offset per fixed end is needed")
        check_dimension(self.degree, self.mode)

    def offsets(self) -> Dict[int, Fraction]:
        fixed = self.degree.fixed
        if self.conditions.fixed_offsets:
            return dict(zip(fixed, self.conditions.fixed_offsets))
        return {i: self.degree.ends[i].offset for i in fixed}


def check_dimension(degree: Degree, mode: str) -> None:
    r, s, nf, n = degree.r, degree.s, len(degree.fixed), degree.n
    if mode == "complex":
        ok = r + s + nf == n - 1
        need = "r + s + |F| = |Delta| - 1"
    else:
        ok = r + 2 * s + nf == n - 1
        need = "r + 2s + |F| = |Delta| - 1"
    if not ok:
        raise DimensionMismatch(f"{need} fails: r={r}, s={s}, |F|={nf}, |Delta|={n}")
    if r + s == 0:
        raise DimensionMismatch("at least one marking is required")


@dataclass
class CurveRecord:
    encoding: str
    multiplicity: Fraction
    placement: PlacedCurve
    tags: Dict[str, int]


@dataclass
class CountReport:
    value: Fraction
    curves: List[CurveRecord]
    stats: Dict[str, int] = field(default_factory=dict)
    conditions: Optional[Conditions] = None
    mode: str = "broccoli"


# ------------------------------------------------------------ search core

# Structures built by the search (plain tuples, cheap to memoize):
#   marking  ("M", c, deg, children)       children: tuple of pieces
#   piece    ("K", cls, glued, flow)
#   flow     ("P", p) | ("F", f) | ("C", h) | ("V", fa, fb, point, on_wall)
# A ("C", h, x) leaf is filled in later with one structure of marking h,
# becoming ("C", marking).

class _Search:
    def __init__(self, problem: Problem, geometric: bool = True, parity: bool = True):
        self.problem = problem
        self.mode = problem.mode
        self.geometric = geometric
        self.parity = parity and problem.mode != "complex"
        deg = problem.degree
        cond = problem.conditions
        self.points = [(REAL, i, cond.real_points[i]) for i in range(deg.r)]
        self.points += [(COMPLEX, i, cond.complex_points[i]) for i in range(deg.s)]
        self.nm = len(self.points)
        classes = deg.free_classes()
        self.cdir = list(classes.keys())
        self.cidx = list(classes.values())
        self.counts = tuple(len(v) for v in self.cidx)
        self.fixed = list(deg.fixed)
        offs = problem.offsets()
        self.fdir = [deg.ends[f].direction for f in self.fixed]
        self.fline = [(primitive(deg.ends[f].direction), Fraction(offs[f])) for f in self.fixed]
        self.degs = []
        for kind, _, _ in self.points:
            if self.mode == "complex" or kind == REAL:
                self.degs.append((2,))
            elif self.mode == "broccoli":
                self.degs.append((3,))
            else:
                self.degs.append((3, 2))
        self.branch_memo: Dict = {}
        self.mark_memo: Dict = {}
        self.parts_memo: Dict = {}
        self.hang_memo: Dict = {}
        self.stats = {"pieces": 0, "merges": 0, "rejected_parity": 0, "rejected_geometry": 0}
        if geometric:
            seen = set()
            for _, _, p in self.points:
                if p in seen:
                    raise GenericityFault("two markings share a point")
                seen.add(p)

    # -- contents: (marking mask, free counts, fixed mask)

    def direction(self, content) -> LatticeVec:
        mm, cnt, fm = content
        x = y = 0
        for c, k in enumerate(cnt):
            x += k * self.cdir[c].x
            y += k * self.cdir[c].y
        for j in range(len(self.fixed)):
            if fm >> j & 1:
                x += self.fdir[j].x
                y += self.fdir[j].y
        return LatticeVec(x, y)

    def units_ok(self, content, branches: int) -> bool:
        """End-count test for a content carrying ``branches`` pieces toward its parent."""
        mm, cnt, fm = content
        nfree = sum(cnt)
        lo = hi = branches
        for m in range(self.nm):
            if mm >> m & 1:
                lo += min(self.degs[m]) - 1
                hi += max(self.degs[m]) - 1
        if self.mode == "welschinger":
            return lo <= nfree <= 2 * hi
        return lo == nfree

    def subcontents(self, content) -> Iterator[Tuple]:
        mm, cnt, fm = content
        msubs = _submasks(mm)
        fsubs = _submasks(fm)
        for m in msubs:
            for c in product(*[range(k + 1) for k in cnt]):
                for f in fsubs:
                    yield (m, c, f)

    @staticmethod
    def minus(a, b):
        return (a[0] & ~b[0], tuple(x - y for x, y in zip(a[1], b[1])), a[2] & ~b[2])

    @staticmethod
    def empty(c) -> bool:
        return c[0] == 0 and c[2] == 0 and not any(c[1])

    # -- geometry of flows: (start point or None, direction, line or None)

    def meet(self, fa, fb):
        """Merge point of two flows as ``(point, boundary)``, or ``None``.

        ``boundary`` marks a merge that sits on a wall (zero length or a
        collinear overlap).  Such merges are kept, and a finished curve using
        one makes the conditions special.
        """
        (pa, ua, la), (pb, ub, lb) = fa, fb
        if not self.geometric:
            return (), False
        if la is None and lb is None:
            dd = det2(ua, ub)
            diff = (pb[0] - pa[0], pb[1] - pa[1])
            if dd == 0:
                if det2(diff, ua) != 0:
                    return None
                # collinear: the merge can slide; report the far start point
                ahead_b = diff[0] * ua.x + diff[1] * ua.y
                ahead_a = -(diff[0] * ub.x + diff[1] * ub.y)
                if ahead_b >= 0 and ahead_a <= 0:
                    return pb, True
                if ahead_a >= 0 and ahead_b <= 0:
                    return pa, True
                if ahead_a > 0 and ahead_b > 0:
                    u = ua + ub
                    return (pa if u.x * ua.x + u.y * ua.y > 0 else pb), True
                return None
            t = Fraction(det2(diff, ub), dd)
            s = Fraction(det2(diff, ua), dd)
            if t < 0 or s < 0:
                return None
            return (pa[0] + t * ua.x, pa[1] + t * ua.y), (t == 0 or s == 0)
        if la is not None and lb is not None:
            (l1, c1), (l2, c2) = la, lb
            dd = det2(l1, l2)
            if dd == 0:
                if c1 * l2.x == c2 * l1.x and c1 * l2.y == c2 * l1.y:
                    raise GenericityFault("coincident fixed lines")
                return None
            a11, a12, a21, a22 = -l1.y, l1.x, -l2.y, l2.x
            return ((c1 * a22 - a12 * c2) / dd, (a11 * c2 - c1 * a21) / dd), False
        if la is not None:
            fa, fb = fb, fa
            (pa, ua, la), (pb, ub, lb) = fa, fb
        l, c = lb
        dd = det2(l, ua)
        here = det2(l, pa)
        if dd == 0:
            if here == c:
                return pa, True
            return None
        t = (c - here) / dd
        if t < 0:
            return None
        return (pa[0] + t * ua.x, pa[1] + t * ua.y), t == 0

    def merge_pair(self, fa, fb, glued_root: bool):
        ua, ub = fa[1], fb[1]
        u = ua + ub
        if u.is_zero():
            return None
        self.stats["merges"] += 1
        if self.parity:
            ea, eb, eu = is_even(ua), is_even(ub), is_even(u)
            if glued_root:
                if not (ea and eb):
                    self.stats["rejected_parity"] += 1
                    return None
            elif eu and not ea and not eb:
                self.stats["rejected_parity"] += 1
                return None
        elif glued_root:
            return None
        hit = self.meet(fa, fb)
        if hit is None:
            self.stats["rejected_geometry"] += 1
            return None
        q, boundary = hit
        if not self.geometric:
            q = None
        return (q, u, None), q, boundary

    # -- pieces and markings

    def branch(self, p: int, content):
        """Pieces entered from marking ``p`` that carry ``content``.

        The root merge of a piece joins a subtree holding the parent ray with
        one that does not, so every piece is a spine of merges starting at
        the parent ray, with parent-free subtrees (see ``hanging``) attached.
        """
        key = (p, content)
        if key in self.branch_memo:
            return self.branch_memo[key]
        self.branch_memo[key] = out = []
        u = self.direction(content)
        if u.is_zero() or not self.units_ok(content, 1):
            return out
        cnt = content[1]
        start = self.points[p][2] if self.geometric else None
        ray = ((start, u, None), ("P", p))
        spine = {}

        def grow(t, glued):
            if not glued and t in spine:
                return spine[t]
            res = []
            if self.empty(t):
                if not glued:
                    res.append(ray)
            else:
                for a in self.parts(t):
                    right = self.hanging(a)
                    if not right:
                        continue
                    for fa, sa in grow(self.minus(t, a), False):
                        for fb, sb in right:
                            hit = self.merge_pair(fa, fb, glued)
                            if hit is not None:
                                res.append((hit[0], ("V", sa, sb, hit[1], hit[2])))
            if not glued:
                spine[t] = res
            return res

        for cls, k in enumerate(cnt):
            glue_opts = [False]
            if self.mode == "welschinger" and k >= 2 and not is_even(self.cdir[cls]):
                glue_opts.append(True)
            for glued in glue_opts:
                take = 2 if glued else 1
                unit = (0, tuple(take if c == cls else 0 for c in range(len(cnt))), 0)
                rest = self.minus(content, unit)
                for _, fl in grow(rest, glued):
                    leaves = []
                    _leaves(fl, leaves)
                    subs = [self.marking(h, x) for h, x in leaves]
                    for choice in product(*subs):
                        fill = dict(zip((h for h, _ in leaves), choice))
                        out.append(("K", cls, glued, _fill(fl, fill)))
                        self.stats["pieces"] += 1
        return out

    def parts(self, t):
        """Non-empty sub-contents of ``t`` that may hang off a spine."""
        if t in self.parts_memo:
            return self.parts_memo[t]
        out = [a for a in self.subcontents(t)
               if (a[0] or a[2]) and self.units_ok(a, 0)]
        self.parts_memo[t] = out
        return out

    def hanging(self, c):
        """Merge trees without the parent ray whose inputs cover content ``c``.

        Inputs are fixed lines and rays from child markings toward the parent;
        a child leaf is ``("C", h, x)`` with ``x`` the content beyond ``h``.
        """
        if c in self.hang_memo:
            return self.hang_memo[c]
        self.hang_memo[c] = out = []
        mm, cnt, fm = c
        if not self.units_ok(c, 0):
            return out
        if mm == 0 and not any(cnt) and fm & (fm - 1) == 0 and fm:
            j = fm.bit_length() - 1
            out.append(((None, -self.fdir[j], self.fline[j]), ("F", j)))
        for h in _bits(mm):
            x = (mm & ~(1 << h), cnt, fm)
            if self.marking(h, x):
                hp = self.points[h][2] if self.geometric else None
                out.append(((hp, -self.direction(x), None), ("C", h, x)))
        # unordered splits: the left part holds the lowest marking or line
        if mm:
            anchor = (mm & -mm, 0)
        else:
            anchor = (0, fm & -fm)
        for a in self.parts(c):
            if not (a[0] & anchor[0] or a[2] & anchor[1]):
                continue
            b = self.minus(c, a)
            if not (b[0] or b[2]):
                continue
            left = self.hanging(a)
            if not left:
                continue
            right = self.hanging(b)
            for fa, sa in left:
                for fb, sb in right:
                    hit = self.merge_pair(fa, fb, False)
                    if hit is not None:
                        out.append((hit[0], ("V", sa, sb, hit[1], hit[2])))
        return out

    def marking(self, c: int, x):
        """Structures at marking ``c`` whose child pieces carry ``x``."""
        key = (c, x)
        if key in self.mark_memo:
            return self.mark_memo[key]
        self.mark_memo[key] = out = []
        for deg in self.degs[c]:
            if not self.units_ok(x, deg - 1):
                continue
            for parts in self.splits(x, deg - 1):
                if not self.marking_parity(c, deg, parts, x, parent=True):
                    continue
                lists = [self.branch(c, b) for b in parts]
                for choice in _unordered_product(parts, lists):
                    out.append(("M", c, deg, choice))
        return out

    def splits(self, content, k: int):
        """Unordered splits of ``content`` into ``k`` non-empty parts."""
        if k == 1:
            return [(content,)] if not self.empty(content) else []
        out = []
        for b in self.subcontents(content):
            if self.empty(b):
                continue
            rest = self.minus(content, b)
            if self.empty(rest):
                continue
            for tail in self.splits(rest, k - 1):
                if _ckey(b) <= _ckey(tail[0]):
                    out.append((b,) + tail)
        return out

    def marking_parity(self, c: int, deg: int, parts, x, parent: bool) -> bool:
        dirs = [self.direction(b) for b in parts]
        if parent:
            dirs.append(-self.direction(x))
        if any(d.is_zero() for d in dirs):
            return False
        if not self.parity:
            return True
        kind = self.points[c][0]
        evens = sum(is_even(d) for d in dirs)
        if kind == REAL:
            return evens == 0
        if deg == 2:
            return evens == 2
        if evens == 0:
            return True
        if evens != 1:
            return False
        if self.mode == "broccoli":
            return True
        # only the double-end shape is allowed besides three odd edges:
        # both odd edges are bare free ends of one direction
        odd = [b for b, d in zip(parts, dirs) if not is_even(d)]
        return (len(odd) == 2 and odd[0] == odd[1]
                and odd[0][0] == 0 and odd[0][2] == 0 and sum(odd[0][1]) == 1)

    def roots(self):
        if self.nm == 0:
            raise DimensionMismatch("at least one marking is required")
        everything = ((1 << self.nm) - 2, self.counts, (1 << len(self.fixed)) - 1)
        out = []
        for deg in self.degs[0]:
            if not self.units_ok(everything, deg):
                continue
            for parts in self.splits(everything, deg):
                if not self.marking_parity(0, deg, parts, everything, parent=False):
                    continue
                lists = [self.branch(0, b) for b in parts]
                for choice in _unordered_product(parts, lists):
                    out.append(("M", 0, deg, choice))
        return out


def _submasks(mask: int) -> List[int]:
    out = []
    sub = mask
    while True:
        out.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & mask
    return out


def _bits(mask: int) -> List[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _ckey(c):
    return (c[0], c[1], c[2])


def _unordered_product(parts, lists):
    """Product of ``lists``; equal neighbouring parts pick unordered pairs."""
    if len(parts) == 2 and parts[0] == parts[1]:
        items = lists[0]
        for i in range(len(items)):
            for j in range(i, len(items)):
                yield (items[i], items[j])
        return
    if len(parts) == 3 and (parts[0] == parts[1] or parts[1] == parts[2]):
        seen = set()
        for choice in product(*lists):
            key = tuple(sorted(map(repr, choice)))
            if key in seen:
                continue
            seen.add(key)
            yield choice
        return
    yield from product(*lists)


def _leaves(flow, out) -> None:
    tag = flow[0]
    if tag == "C":
        out.append((flow[1], flow[2]))
    elif tag == "V":
        _leaves(flow[1], out)
        _leaves(flow[2], out)


def _fill(flow, fill):
    tag = flow[0]
    if tag == "C":
        return ("C", fill[flow[1]])
    if tag == "V":
        return ("V", _fill(flow[1], fill), _fill(flow[2], fill), flow[3], flow[4])
    return flow


def _on_wall(st) -> bool:
    """Whether a finished structure uses a boundary merge anywhere."""
    tag = st[0]
    if tag == "M":
        return any(_on_wall(k) for k in st[3])
    if tag == "K":
        return _on_wall(st[3])
    if tag == "C":
        return _on_wall(st[1])
    if tag == "V":
        return st[4] or _on_wall(st[1]) or _on_wall(st[2])
    return False


# ------------------------------------------------------ structure -> type

class _Builder:
    def __init__(self, search: _Search):
        self.s = search
        self.edges: List[Tuple[int, int]] = []
        self.leaves: Dict[int, Tuple[str, int]] = {}
        self.pos: Dict[int, Tuple] = {}
        self.n = 0
        self.pool = [list(ix) for ix in search.cidx]

    def node(self) -> int:
        self.n += 1
        return self.n - 1

    def leaf(self, v: int, kind: str, idx: int) -> None:
        w = self.node()
        self.leaves[w] = (kind, idx)
        self.edges.append((v, w))

    def marking(self, st) -> int:
        _, c, _, children = st
        kind, idx, point = self.s.points[c]
        v = self.node()
        self.pos[v] = point
        self.leaf(v, kind, idx)
        for piece in children:
            self.piece(piece, v)
        return v

    def piece(self, st, parent_vertex: int) -> None:
        _, cls, glued, flow = st
        top = self.flow(flow, parent_vertex)
        for _ in range(2 if glued else 1):
            self.leaf(top, END, self.pool[cls].pop(0))

    def flow(self, st, pv: int) -> int:
        tag = st[0]
        if tag == "P":
            return pv
        if tag == "F":
            return ("F", st[1])
        if tag == "C":
            return self.marking(st[1])
        v = self.node()
        if st[3] is not None:
            self.pos[v] = st[3]
        for sub in (st[1], st[2]):
            w = self.flow(sub, pv)
            if isinstance(w, tuple):
                self.leaf(v, END, self.s.fixed[w[1]])
            else:
                self.edges.append((w, v))
        return v


def structure_to_type(search: _Search, root) -> Tuple[CombType, Dict[int, Tuple]]:
    b = _Builder(search)
    b.marking(root)
    t = from_edges(search.problem.degree, b.leaves, b.edges)
    return t, b.pos


# ---------------------------------------------------------------- counting

def _verify(args):
    """Classify, weigh and independently place one candidate type."""
    t, pos, mode, cond = args
    derive_directions(t)
    canonical_orientation(t)
    enc = canonical_encoding(t)
    r, s = t.counts()
    dim = type_dimension(t)
    if dim != 2 * (r + s) + len(t.degree.fixed):
        raise AssertionError(f"{enc}: dimension {dim} is off")
    tags = classify_vertices(t)
    counts = tag_counts(tags)
    if mode == "complex":
        mult = Fraction(mikhalkin_multiplicity(t))
    else:
        allowed = BROCCOLI_TAGS if mode == "broccoli" else WELSCHINGER_TAGS
        if not set(counts) <= allowed:
            raise AssertionError(f"{enc}: vertex tags {counts} outside the {mode} set")
        m = curve_multiplicity_gauss(t, "unlabeled")
        if not m.is_real():
            raise AssertionError(f"{enc}: multiplicity {m} is not real")
        mult = m.re
        check = unoriented_broccoli_check if mode == "broccoli" else unoriented_welschinger_check
        if not check(t):
            raise AssertionError(f"{enc}: unoriented {mode} check disagrees")
        if mode == "welschinger" and counts.get("T7", 0) != counts.get("T8", 0):
            raise AssertionError(f"{enc}: n7 != n8")
    placed = place_curve(t, cond)
    if not isinstance(placed, PlacedCurve):
        raise AssertionError(f"{enc}: search placement not reproduced ({placed})")
    for v, p in pos.items():
        if placed.positions[v] != p:
            raise AssertionError(f"{enc}: vertex {v} placed differently")
    return CurveRecord(enc, mult, placed, counts)


def worker_count(threads: Optional[int] = None) -> int:
    if threads is None:
        threads = int(os.environ.get("TROPICOUNT_THREADS", "1") or 1)
    if threads == 0:
        threads = os.cpu_count() or 1
    return max(1, threads)


def count_invariant(problem: Problem, threads: Optional[int] = None) -> CountReport:
    """Sum unlabeled multiplicities of the curves of ``problem.mode``.

    Raises :class:`GenericityFault` if the conditions turn out special.
    """
    search = _Search(problem)
    roots = search.roots()
    for st in roots:
        if _on_wall(st):
            t, _ = structure_to_type(search, st)
            raise GenericityFault(f"a curve of type {canonical_encoding(derive_directions(t))} "
                                  "has a zero-length edge")
    jobs = []
    for st in roots:
        t, pos = structure_to_type(search, st)
        jobs.append((t, pos, problem.mode, problem.conditions))
    workers = worker_count(threads)
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_verify, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        records = [_verify(j) for j in jobs]
    records.sort(key=lambda rec: rec.encoding)
    encs = [rec.encoding for rec in records]
    if len(set(encs)) != len(encs):
        raise AssertionError("the search produced a curve twice")
    value = sum((rec.multiplicity for rec in records), Fraction(0))
    stats = dict(search.stats)
    stats["curves"] = len(records)
    return CountReport(value, records, stats, problem.conditions, problem.mode)


def generate_types(problem: Problem, parity: bool = True) -> Iterator[CombType]:
    """Candidate types without geometry, deduplicated by canonical encoding.

    Every marking keeps the valence rules of the mode and every piece of the
    cut curve has one free end; vertex parity rules apply when ``parity`` is set.
    """
    search = _Search(problem, geometric=False, parity=parity)
    seen = set()
    for st in search.roots():
        t, _ = structure_to_type(search, st)
        try:
            derive_directions(t)
        except ValueError:
            continue
        enc = canonical_encoding(t)
        if enc in seen:
            continue
        seen.add(enc)
        yield t


def count_by_types(problem: Problem, parity: bool = True):
    """Slow oracle: place every generated type through the linear system."""
    value = Fraction(0)
    found = []
    for t in generate_types(problem, parity):
        placed = place_curve(t, problem.conditions)
        if not isinstance(placed, PlacedCurve):
            if placed.status == "degenerate":
                raise GenericityFault(f"{canonical_encoding(t)} has a zero length")
            continue
        canonical_orientation(t)
        if problem.mode == "complex":
            m = Fraction(mikhalkin_multiplicity(t))
        else:
            m = curve_multiplicity_gauss(t, "unlabeled").re
        found.append((canonical_encoding(t), m))
        value += m
    return value, sorted(found)


# ----------------------------------------------------------- randomization

def random_conditions(degree: Degree, seed: int, box: int = DEFAULT_BOX) -> Conditions:
    """Integer conditions in ``[-box, box]^2``, a pure function of ``seed``."""
    if box < 0:
        raise ValueError("box must be non-negative")
    rng = random.Random(seed)
    pt = lambda: (Fraction(rng.randint(-box, box)), Fraction(rng.randint(-box, box)))
    real = tuple(pt() for _ in range(degree.r))
    cplx = tuple(pt() for _ in range(degree.s))
    offs = tuple(Fraction(rng.randint(-box, box)) for _ in degree.fixed)
    return Conditions(real, cplx, offs)


def resample_seed(seed: int, attempt: int) -> int:
    return seed if attempt == 0 else seed * 1_000_003 + attempt


def count_generic(degree: Degree, mode: str, seed: int, box: int = DEFAULT_BOX,
                  threads: Optional[int] = None, tries: int = MAX_RESAMPLES) -> CountReport:
    """Count through random conditions, resampling on genericity faults."""
    for attempt in range(tries):
        cond = random_conditions(degree, resample_seed(seed, attempt), box)
        try:
            return count_invariant(Problem(degree, mode, cond), threads)
        except GenericityFault as exc:
            log.info("seed %s attempt %s not generic: %s", seed, attempt, exc)
    raise GenericityExhausted(f"no generic conditions after {tries} samples (seed {seed})")


@dataclass
class InvarianceReport:
    values: List[Fraction]
    seeds: List[int]
    constant: bool


def invariance_experiment(degree: Degree, mode: str, trials: int, seed: int,
                          box: int = DEFAULT_BOX, threads: Optional[int] = None) -> InvarianceReport:
    if trials < 2:
        raise ValueError("need at least two trials")
    rng = random.Random(seed)
    seeds = [rng.randrange(2 ** 32) for _ in range(trials)]
    values = [count_generic(degree, mode, sd, box, threads).value for sd in seeds]
    return InvarianceReport(values, seeds, len(set(values)) == 1)
