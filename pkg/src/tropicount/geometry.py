"""Exact placement of a combinatorial type through point and line conditions.

Unknowns are the position of a root vertex and the lengths of the bounded
edges; every marking gives two equations and every fixed end one.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

from .curve import END, REAL, CombType, derive_directions, type_dimension
from .lattice import det2, primitive

Point = Tuple[Fraction, Fraction]


class NotSquare(ValueError):
    pass


class Singular(ValueError):
    pass


@dataclass(frozen=True)
class Conditions:
    real_points: Tuple[Point, ...] = ()
    complex_points: Tuple[Point, ...] = ()
    fixed_offsets: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        conv = lambda pts: tuple((Fraction(p[0]), Fraction(p[1])) for p in pts)
        object.__setattr__(self, "real_points", conv(self.real_points))
        object.__setattr__(self, "complex_points", conv(self.complex_points))
        object.__setattr__(self, "fixed_offsets", tuple(Fraction(c) for c in self.fixed_offsets))

    def point(self, kind: str, idx: int) -> Point:
        return self.real_points[idx] if kind == REAL else self.complex_points[idx]


@dataclass
class PlacedCurve:
    type: CombType
    root: int
    root_position: Point
    lengths: Dict[Tuple[int, int], Fraction]
    positions: Dict[int, Point]


@dataclass(frozen=True)
class Outcome:
    """Result of :func:`place_curve` when it does not produce a curve."""

    status: str  # "not_realizable" | "degenerate"
    reason: str = ""


NOT_REALIZABLE = "not_realizable"
DEGENERATE = "degenerate"


def fixed_line_offsets(t: CombType, cond: Conditions) -> Dict[int, Fraction]:
    """Map end index -> line offset, in the order of the fixed ends."""
    fixed = t.degree.fixed
    if cond.fixed_offsets:
        if len(cond.fixed_offsets) != len(fixed):
            raise NotSquare("wrong number of fixed-end offsets")
        return dict(zip(fixed, cond.fixed_offsets))
    return {i: t.degree.ends[i].offset for i in fixed}


def _paths(t: CombType, root: int):
    """Parent pointers on internal vertices, rooted at ``root``."""
    parent = {root: None}
    order = [root]
    for v in order:
        for w in t.adjacency[v]:
            if w not in t.leaves and w not in parent:
                parent[w] = v
                order.append(w)
    return parent, order


def build_system(t: CombType, cond: Conditions, root: Optional[int] = None):
    """Return ``(matrix, rhs, columns, root)``; columns name the unknowns."""
    if not t.directions:
        derive_directions(t)
    r, s = t.counts()
    nfix = len(t.degree.fixed)
    if (len(cond.real_points), len(cond.complex_points)) != (r, s):
        raise NotSquare(f"conditions give {len(cond.real_points)} real and "
                        f"{len(cond.complex_points)} complex points for r={r}, s={s}")
    if type_dimension(t) != 2 * (r + s) + nfix:
        raise NotSquare(f"type dimension {type_dimension(t)} != {2 * (r + s) + nfix}")
    internal = t.internal()
    root = internal[0] if root is None else root
    parent, order = _paths(t, root)
    bounded = t.bounded_edges()
    col = {e: 2 + i for i, e in enumerate(bounded)}
    ncols = 2 + len(bounded)
    # each vertex position as an affine form: coefficient row over unknowns
    form: Dict[int, Tuple[List[int], List[int]]] = {}
    for v in order:
        p = parent[v]
        if p is None:
            fx = [0] * ncols
            fy = [0] * ncols
            fx[0], fy[1] = 1, 1
        else:
            fx, fy = list(form[p][0]), list(form[p][1])
            d = t.direction(p, v)
            c = col[(min(p, v), max(p, v))]
            fx[c] += d.x
            fy[c] += d.y
        form[v] = (fx, fy)
    rows, rhs = [], []
    offsets = fixed_line_offsets(t, cond)
    for leaf, (kind, idx) in sorted(t.leaves.items()):
        v = t.adjacency[leaf][0]
        fx, fy = form[v]
        if kind == END:
            e = t.degree.ends[idx]
            if not e.fixed:
                continue
            u = primitive(e.direction)
            rows.append([u.x * b - u.y * a for a, b in zip(fx, fy)])
            rhs.append(Fraction(offsets[idx]))
        else:
            px, py = cond.point(kind, idx)
            rows.append(list(fx))
            rhs.append(px)
            rows.append(list(fy))
            rhs.append(py)
    if len(rows) != ncols:
        raise NotSquare(f"{len(rows)} equations for {ncols} unknowns")
    columns = ["x", "y"] + bounded
    return rows, rhs, columns, root


def solve_exact(matrix: Sequence[Sequence], rhs: Sequence) -> List[Fraction]:
    """Solve a square rational system by fraction-free (Bareiss) elimination."""
    n = len(matrix)
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise NotSquare("matrix is not square")
    # scale each row to integers
    aug = []
    for row, b in zip(matrix, rhs):
        vals = [Fraction(x) for x in row] + [Fraction(b)]
        m = lcm(*[v.denominator for v in vals]) if vals else 1
        aug.append([int(v * m) for v in vals])
    prev = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if piv is None:
            raise Singular("determinant is zero")
        if piv != k:
            aug[k], aug[piv] = aug[piv], aug[k]
        pk = aug[k][k]
        for i in range(k + 1, n):
            aik = aug[i][k]
            row_i, row_k = aug[i], aug[k]
            for j in range(k + 1, n + 1):
                row_i[j] = (row_i[j] * pk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pk
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(aug[i][n])
        for j in range(i + 1, n):
            acc -= aug[i][j] * x[j]
        x[i] = acc / aug[i][i]
    return x


def place_curve(t: CombType, cond: Conditions, root: Optional[int] = None):
    """Place ``t`` through ``cond``; returns a PlacedCurve or an Outcome."""
    rows, rhs, columns, root = build_system(t, cond, root)
    try:
        sol = solve_exact(rows, rhs)
    except Singular:
        return Outcome(NOT_REALIZABLE, "singular system")
    lengths = {columns[i]: sol[i] for i in range(2, len(columns))}
    if any(l < 0 for l in lengths.values()):
        return Outcome(NOT_REALIZABLE, "negative edge length")
    if any(l == 0 for l in lengths.values()):
        return Outcome(DEGENERATE, "zero edge length")
    parent, order = _paths(t, root)
    pos = {root: (sol[0], sol[1])}
    for v in order[1:]:
        p = parent[v]
        d = t.direction(p, v)
        l = lengths[(min(p, v), max(p, v))]
        pos[v] = (pos[p][0] + l * d.x, pos[p][1] + l * d.y)
    return PlacedCurve(t, root, (sol[0], sol[1]), lengths, pos)


def check_placement(pc: PlacedCurve, cond: Conditions) -> bool:
    """Re-evaluate every condition on a placed curve (exact round trip)."""
    t = pc.type
    offsets = fixed_line_offsets(t, cond)
    for leaf, (kind, idx) in t.leaves.items():
        v = t.adjacency[leaf][0]
        if kind == END:
            e = t.degree.ends[idx]
            if e.fixed and det2(primitive(e.direction), pc.positions[v]) != offsets[idx]:
                return False
        elif pc.positions[v] != cond.point(kind, idx):
            return False
    return all(l > 0 for l in pc.lengths.values())
