"""Combinatorial types of marked rational plane tropical curves.

A :class:`CombType` is an abstract tree.  Its leaves are the unmarked ends
(indexed into ``degree.ends``) and the markings (real or complex, indexed
into the condition lists); every other node is an internal vertex.  Edge
directions are forced by balancing and computed by :func:`derive_directions`.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, gcd
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .lattice import (GaussRat, InvalidDirection, LatticeVec, ZERO, det2, ipow,
                      is_even, vec, weight)


class InvalidClass(ValueError):
    pass


class ContractedBoundedEdge(ValueError):
    pass


class NoFreeEnd(ValueError):
    pass


class AmbiguousOrientation(ValueError):
    pass


class NotMultiplicative(ValueError):
    pass


# ---------------------------------------------------------------- degrees

class End(NamedTuple):
    direction: LatticeVec
    fixed: bool = False
    offset: Optional[Fraction] = None


@dataclass(frozen=True)
class Degree:
    """Unmarked ends plus the numbers of real and complex markings."""

    ends: Tuple[End, ...]
    r: int = 0
    s: int = 0

    def __post_init__(self):
        ends = []
        for e in self.ends:
            e = End(vec(e[0]), *e[1:]) if not isinstance(e, End) else e
            if e.direction.is_zero():
                raise InvalidDirection("unmarked ends need nonzero directions")
            if e.fixed and e.offset is None:
                e = End(e.direction, True, Fraction(0))
            if not e.fixed:
                e = End(e.direction, False, None)
            ends.append(e)
        object.__setattr__(self, "ends", tuple(ends))
        total = ZERO
        for e in self.ends:
            total = total + e.direction
        if not total.is_zero():
            raise InvalidClass(f"end directions do not balance (sum {tuple(total)})")

    @property
    def n(self) -> int:
        return len(self.ends)

    @property
    def fixed(self) -> Tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.ends) if e.fixed)

    def dimension_ok(self) -> bool:
        return self.r + 2 * self.s + len(self.fixed) == self.n - 1

    def with_markings(self, r: int, s: int) -> "Degree":
        return Degree(self.ends, r, s)

    def free_classes(self) -> Dict[LatticeVec, List[int]]:
        """Non-fixed end indices grouped by direction, in first-seen order."""
        out: Dict[LatticeVec, List[int]] = {}
        for i, e in enumerate(self.ends):
            if not e.fixed:
                out.setdefault(e.direction, []).append(i)
        return out


def make_degree(items, r: int = 0, s: int = 0) -> Degree:
    """Build a degree from ``[(direction, count, fixed, offset), ...]``."""
    ends = []
    for item in items:
        d, count = item[0], item[1]
        fixed = item[2] if len(item) > 2 else False
        off = item[3] if len(item) > 3 else None
        for _ in range(count):
            ends.append(End(vec(d), fixed, Fraction(off) if fixed else None))
    return Degree(tuple(ends), r, s)


def _polygon_degree(vertices) -> List[LatticeVec]:
    pts = []
    for p in vertices:
        if not pts or tuple(pts[-1]) != tuple(p):
            pts.append(tuple(p))
    if len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    n = len(pts)
    if n < 3:
        raise InvalidClass("polygon is degenerate")
    area2 = sum(det2(pts[i], pts[(i + 1) % n]) for i in range(n))
    if area2 <= 0:
        raise InvalidClass("polygon is degenerate or not counterclockwise")
    out = []
    for i in range(n):
        a, b, c = pts[i], pts[(i + 1) % n], pts[(i + 2) % n]
        e = (b[0] - a[0], b[1] - a[1])
        f = (c[0] - b[0], c[1] - b[1])
        if det2(e, f) < 0:
            raise InvalidClass("polygon is not convex")
        l = gcd(abs(e[0]), abs(e[1]))
        normal = LatticeVec(e[1] // l, -e[0] // l)
        out.extend([normal] * l)
    return out


def del_pezzo_degree(surface: str, d: int, d1: int = 0, d2: int = 0, d3: int = 0) -> Degree:
    """Facet normals of the toric Del Pezzo polygon, repeated by lattice length.

    ``surface`` is ``"P2"``, ``"P1xP1"`` (bidegree ``(d, d1)``) or ``"P2_k"``
    with ``k`` in 1..3 and ``D = d L - d1 E1 - d2 E2 - d3 E3``.
    """
    if surface == "P2":
        if d < 1:
            raise InvalidClass("degree must be positive")
        poly = [(0, 0), (d, 0), (0, d)]
    elif surface == "P1xP1":
        if d < 1 or d1 < 1:
            raise InvalidClass("bidegree entries must be positive")
        poly = [(0, 0), (d, 0), (d, d1), (0, d1)]
    elif surface in ("P2_1", "P2_2", "P2_3"):
        k = int(surface[-1])
        ds = [d1, d2, d3][:k]
        if any(x < 1 for x in ds) or any(x >= d for x in ds):
            raise InvalidClass("need 1 <= d_i < d")
        if k == 1:
            poly = [(0, 0), (d - d1, 0), (d - d1, d1), (0, d)]
        elif k == 2:
            if d1 + d2 > d:
                raise InvalidClass("need d1 + d2 <= d")
            poly = [(d2, 0), (d - d1, 0), (d - d1, d1), (0, d), (0, d2)]
        else:
            if d1 + d2 > d or d1 + d3 > d or d2 + d3 > d:
                raise InvalidClass("need d_i + d_j <= d")
            poly = [(d2, 0), (d - d1, 0), (d - d1, d1), (d3, d - d3), (0, d - d3), (0, d2)]
    else:
        raise InvalidClass(f"unknown surface {surface!r}")
    ends = tuple(End(v) for v in _polygon_degree(poly))
    return Degree(ends)


def relative_degree(alpha: Sequence[int], beta: Sequence[int], offsets=None) -> Degree:
    """The degree with ``d`` ends ``(0,-1)``, ``d`` ends ``(1,1)`` and left
    ends ``(-k,0)``; the ``alpha`` ones are fixed (offsets default to 0)."""
    d = sum((i + 1) * x for i, x in enumerate(alpha)) + sum((i + 1) * x for i, x in enumerate(beta))
    ends = []
    offsets = list(offsets) if offsets is not None else []
    j = 0
    for k, a in enumerate(alpha, start=1):
        for _ in range(a):
            off = Fraction(offsets[j]) if j < len(offsets) else Fraction(0)
            ends.append(End(LatticeVec(-k, 0), True, off))
            j += 1
    for k, b in enumerate(beta, start=1):
        ends.extend([End(LatticeVec(-k, 0))] * b)
    ends.extend([End(LatticeVec(0, -1))] * d)
    ends.extend([End(LatticeVec(1, 1))] * d)
    return Degree(tuple(ends))


def group_order(degree: Degree) -> int:
    out = 1
    for idx in degree.free_classes().values():
        out *= factorial(len(idx))
    return out


# ---------------------------------------------------------------- types

END, REAL, COMPLEX = "end", "real", "complex"


class VertexTag(NamedTuple):
    tag: str
    a: int
    node: int
    directions: Tuple[LatticeVec, ...]


UNCLASSIFIABLE = "Unclassifiable"


@dataclass
class CombType:
    """A marked tree with leaf data; derived data is filled lazily."""

    degree: Degree
    adjacency: Tuple[Tuple[int, ...], ...]
    leaves: Dict[int, Tuple[str, int]]
    directions: Dict[Tuple[int, int], LatticeVec] = field(default_factory=dict)
    outward: Dict[Tuple[int, int], bool] = field(default_factory=dict)

    @property
    def nodes(self) -> range:
        return range(len(self.adjacency))

    def is_leaf(self, v: int) -> bool:
        return v in self.leaves

    def internal(self) -> List[int]:
        return [v for v in self.nodes if v not in self.leaves]

    def edges(self) -> List[Tuple[int, int]]:
        return [(a, b) for a in self.nodes for b in self.adjacency[a] if a < b]

    def bounded_edges(self) -> List[Tuple[int, int]]:
        return [(a, b) for a, b in self.edges() if a not in self.leaves and b not in self.leaves]

    def marking_at(self, v: int) -> Optional[Tuple[str, int]]:
        for w in self.adjacency[v]:
            lf = self.leaves.get(w)
            if lf is not None and lf[0] != END:
                return lf
        return None

    def unmarked_neighbors(self, v: int) -> List[int]:
        return [w for w in self.adjacency[v] if self.leaves.get(w, (END,))[0] == END]

    def markings(self) -> List[Tuple[str, int]]:
        return sorted(lf for lf in self.leaves.values() if lf[0] != END)

    def counts(self) -> Tuple[int, int]:
        ms = self.markings()
        return sum(1 for m in ms if m[0] == REAL), sum(1 for m in ms if m[0] == COMPLEX)

    def leaf_direction(self, v: int) -> LatticeVec:
        kind, idx = self.leaves[v]
        return self.degree.ends[idx].direction if kind == END else ZERO

    def end_leaf(self, v: int) -> Optional[End]:
        lf = self.leaves.get(v)
        if lf is None or lf[0] != END:
            return None
        return self.degree.ends[lf[1]]

    def direction(self, a: int, b: int) -> LatticeVec:
        """Direction of edge ``ab`` pointing away from ``a``."""
        if not self.directions:
            derive_directions(self)
        return self.directions[(a, b)]

    def double_end_pairs(self) -> List[Tuple[int, int]]:
        """Pairs of equal odd non-fixed end leaves at a 4-valent vertex."""
        out = []
        for v in self.internal():
            if len(self.adjacency[v]) != 4:
                continue
            ends = [w for w in self.adjacency[v] if self.end_leaf(w) is not None
                    and not self.end_leaf(w).fixed and not is_even(self.end_leaf(w).direction)]
            for i in range(len(ends)):
                for j in range(i + 1, len(ends)):
                    if self.end_leaf(ends[i]).direction == self.end_leaf(ends[j]).direction:
                        out.append((ends[i], ends[j]))
        return out


def _side_sums(t: CombType) -> Dict[Tuple[int, int], LatticeVec]:
    """For every oriented pair ``(a, b)`` the sum of leaf directions beyond ``b``."""
    root = 0
    parent = {root: None}
    order = [root]
    for v in order:
        for w in t.adjacency[v]:
            if w not in parent:
                parent[w] = v
                order.append(w)
    below: Dict[int, LatticeVec] = {}
    for v in reversed(order):
        total = t.leaf_direction(v) if v in t.leaves else ZERO
        for w in t.adjacency[v]:
            if parent.get(w) == v:
                total = total + below[w]
        below[v] = total
    total_all = below[root]
    if not total_all.is_zero():
        raise InvalidClass("leaf directions do not balance")
    out = {}
    for v in order:
        p = parent[v]
        if p is None:
            continue
        out[(p, v)] = below[v]
        out[(v, p)] = -below[v]
    return out


def derive_directions(t: CombType) -> CombType:
    dirs = _side_sums(t)
    for (a, b), d in dirs.items():
        if a not in t.leaves and b not in t.leaves and d.is_zero():
            raise ContractedBoundedEdge(f"bounded edge {a}-{b} has zero direction")
    t.directions = dirs
    return t


def _free_units(t: CombType) -> Dict[int, int]:
    """Map each non-fixed end leaf to a representative (glued pairs share one)."""
    rep = {}
    for v in t.nodes:
        e = t.end_leaf(v)
        if e is not None and not e.fixed:
            rep[v] = v
    for a, b in t.double_end_pairs():
        rep[b] = rep[a]
    return rep


def cut_components(t: CombType) -> List[List[int]]:
    """Unmarked edges grouped into the pieces left after removing marked vertices.

    Each piece is returned as a list of nodes; marked vertices are excluded.
    """
    marked = {v for v in t.internal() if t.marking_at(v) is not None}
    seen = set()
    comps = []
    for v in t.nodes:
        if v in seen or v in marked or t.leaves.get(v, (END,))[0] != END:
            continue
        comp = []
        stack = [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in t.adjacency[x]:
                if y in seen or y in marked or t.leaves.get(y, (END,))[0] != END:
                    continue
                seen.add(y)
                stack.append(y)
        comps.append(comp)
    # an edge joining two marked vertices is a component without nodes
    for a, b in t.bounded_edges():
        if a in marked and b in marked:
            comps.append([])
    return comps


def canonical_orientation(t: CombType) -> CombType:
    """Orient every unmarked edge toward the unique free end of its piece."""
    if not t.directions:
        derive_directions(t)
    rep = _free_units(t)
    marked = {v for v in t.internal() if t.marking_at(v) is not None}
    out: Dict[Tuple[int, int], bool] = {}
    for comp in cut_components(t):
        free = sorted({rep[v] for v in comp if v in rep})
        if not free:
            raise NoFreeEnd("a piece of the cut curve has no free end")
        if len(free) > 1:
            raise AmbiguousOrientation("a piece of the cut curve has several free ends")
        target = free[0]
        targets = [v for v in comp if rep.get(v) == target]
        # BFS from the free end(s) through the piece, marked vertices are sinks
        dist = {v: 0 for v in targets}
        queue = list(targets)
        for x in queue:
            if x in marked:
                continue
            for y in t.adjacency[x]:
                if t.leaves.get(y, (END,))[0] != END:
                    continue
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
                if (x, y) not in out:
                    # flow goes from y toward x
                    out[(y, x)] = True
                    out[(x, y)] = False
    t.outward = out
    return t


def edge_points_out(t: CombType, v: int, w: int) -> bool:
    """Whether the edge ``vw`` is oriented away from ``v``."""
    return t.outward[(v, w)]


def _abs_det_pairs(dirs: Sequence[LatticeVec]) -> List[int]:
    return [abs(det2(dirs[i], dirs[j])) for i in range(len(dirs)) for j in range(i + 1, len(dirs))]


def _classify_one(t: CombType, v: int) -> VertexTag:
    nbrs = t.unmarked_neighbors(v)
    dirs = tuple(t.direction(v, w) for w in nbrs)
    outs = [t.outward[(v, w)] for w in nbrs]
    even = [is_even(d) for d in dirs]
    mark = t.marking_at(v)
    bad = VertexTag(UNCLASSIFIABLE, 0, v, dirs)
    k = len(nbrs)
    if mark is not None and len(t.adjacency[v]) != k + 1:
        return bad
    if mark is not None and mark[0] == REAL:
        if k == 2 and all(outs) and not any(even):
            return VertexTag("T1", 0, v, dirs)
        return bad
    if mark is not None:
        if not all(outs):
            return bad
        if k == 3:
            dets = _abs_det_pairs(dirs)
            assert len(set(dets)) == 1, "balanced triple must share one |det|"
            a = dets[0]
            if not any(even):
                return VertexTag("T5", a, v, dirs)
            if sum(even) == 1:
                odd = [nbrs[i] for i in range(3) if not even[i]]
                e0, e1 = t.end_leaf(odd[0]), t.end_leaf(odd[1])
                if (e0 is not None and e1 is not None and not e0.fixed and not e1.fixed
                        and e0.direction == e1.direction):
                    return VertexTag("T6b", a, v, dirs)
                return VertexTag("T6a", a, v, dirs)
            return bad
        if k == 2 and all(even):
            return VertexTag("T7", 0, v, dirs)
        return bad
    if k == 3:
        if sum(outs) != 1:
            return bad
        o = outs.index(True)
        ins = [i for i in range(3) if i != o]
        a = abs(det2(dirs[ins[0]], dirs[ins[1]]))
        if not any(even):
            return VertexTag("T2", a, v, dirs)
        if all(even):
            return VertexTag("T4", a, v, dirs)
        if sum(even) == 1 and not even[o]:
            return VertexTag("T3", a, v, dirs)
        return bad
    if k == 4:
        pairs = [p for p in t.double_end_pairs() if t.adjacency[p[0]][0] == v]
        if len(pairs) != 1:
            return bad
        p = set(pairs[0])
        rest = [i for i in range(4) if nbrs[i] not in p]
        if all(t.outward[(v, w)] for w in p) and all(even[i] and not outs[i] for i in rest):
            a = abs(det2(dirs[rest[0]], dirs[rest[1]]))
            return VertexTag("T8", a, v, dirs)
        return bad
    return bad


def classify_vertices(t: CombType) -> List[VertexTag]:
    if not t.outward:
        canonical_orientation(t)
    return [_classify_one(t, v) for v in t.internal()]


HALF = Fraction(1, 2)


def vertex_multiplicity(tag: VertexTag, convention: str = "unlabeled") -> GaussRat:
    name, a = tag.tag, tag.a
    if name in ("T1", "T7"):
        m = GaussRat(1)
    elif name in ("T2", "T6a", "T6b"):
        m = ipow(a - 1)
    elif name in ("T3", "T4", "T5"):
        m = a * ipow(a - 1)
    elif name == "T8":
        m = GaussRat(-a)
    else:
        raise NotMultiplicative(f"vertex {tag.node} is {name}")
    if convention == "unlabeled" and name in ("T6b", "T8"):
        m = m * HALF
    elif convention not in ("labeled", "unlabeled"):
        raise ValueError(f"unknown convention {convention!r}")
    return m


def end_factor(t: CombType) -> GaussRat:
    out = GaussRat(1)
    for v in t.nodes:
        e = t.end_leaf(v)
        if e is not None:
            out = out * ipow(weight(e.direction) - 1)
    return out


def curve_multiplicity_gauss(t: CombType, convention: str = "unlabeled") -> GaussRat:
    m = end_factor(t)
    for tag in classify_vertices(t):
        m = m * vertex_multiplicity(tag, convention)
    return m


def curve_multiplicity(t: CombType, convention: str = "unlabeled") -> Fraction:
    m = curve_multiplicity_gauss(t, convention)
    if not m.is_real():
        raise AssertionError(f"curve multiplicity {m} is not real")
    return m.re


def mikhalkin_multiplicity(t: CombType) -> int:
    """Product of |det| over unmarked trivalent vertices."""
    out = 1
    for v in t.internal():
        if t.marking_at(v) is None:
            nbrs = t.unmarked_neighbors(v)
            if len(nbrs) != 3:
                raise NotMultiplicative("complex counts need trivalent unmarked vertices")
            out *= abs(det2(t.direction(v, nbrs[0]), t.direction(v, nbrs[1])))
    return out


def type_dimension(t: CombType) -> int:
    return 2 + len(t.bounded_edges())


def tag_counts(tags: Sequence[VertexTag]) -> Dict[str, int]:
    out: Dict[str, int] = {}
    for tg in tags:
        out[tg.tag] = out.get(tg.tag, 0) + 1
    return out


BROCCOLI_TAGS = frozenset(["T1", "T2", "T3", "T4", "T5", "T6a", "T6b"])
WELSCHINGER_TAGS = frozenset(["T1", "T2", "T3", "T4", "T5", "T6b", "T7", "T8"])


# ------------------------------------------------------ unoriented checks

def _even_subgraph(t: CombType, glue: bool):
    """Edges of the even subgraph: even unmarked edges, marking edges and,
    when ``glue`` is set, the double ends."""
    doubles = set()
    if glue:
        for a, b in t.double_end_pairs():
            doubles.update((a, b))
    edges = []
    for a, b in t.edges():
        if a in t.leaves and t.leaves[a][0] != END or b in t.leaves and t.leaves[b][0] != END:
            edges.append((a, b))
        elif is_even(t.direction(a, b)) or a in doubles or b in doubles:
            edges.append((a, b))
    return edges, doubles


def _even_components(t: CombType, edges):
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    groups: Dict[int, List[Tuple[int, int]]] = {}
    for e in edges:
        groups.setdefault(find(e[0]), []).append(e)
    return list(groups.values())


def unoriented_broccoli_check(t: CombType) -> bool:
    for v in t.internal():
        m = t.marking_at(v)
        if m is not None and m[0] == COMPLEX and len(t.adjacency[v]) != 4:
            return False
    edges, _ = _even_subgraph(t, glue=False)
    for comp in _even_components(t, edges):
        valence: Dict[int, int] = {}
        for a, b in comp:
            valence[a] = valence.get(a, 0) + 1
            valence[b] = valence.get(b, 0) + 1
        stems = 0
        for v, k in valence.items():
            if v in t.leaves:
                e = t.end_leaf(v)
                if e is not None and not e.fixed:
                    stems += 1
            elif k == 1:
                stems += 1
        if stems != 1:
            return False
    return True


def unoriented_welschinger_check(t: CombType) -> bool:
    edges, doubles = _even_subgraph(t, glue=True)
    in_even = set()
    for a, b in edges:
        in_even.update((a, b))
    for v in t.internal():
        m = t.marking_at(v)
        if m is not None and m[0] == COMPLEX and len(t.adjacency[v]) != 4:
            others = [w for w in t.adjacency[v] if t.leaves.get(w, (END,))[0] == END
                      and is_even(t.direction(v, w))]
            if not others:
                return False
    edge_set = {frozenset(e) for e in edges}
    for comp in _even_components(t, edges):
        nodes = set()
        for a, b in comp:
            nodes.update((a, b))
        roots = 0
        for v in nodes:
            if v in t.leaves:
                e = t.end_leaf(v)
                if e is not None and not e.fixed and is_even(e.direction):
                    roots += 1
            elif any(frozenset((v, w)) not in edge_set for w in t.adjacency[v]):
                roots += 1
        if roots != 1:
            return False
    return True


# ------------------------------------------------------ canonical encoding

def _leaf_code(t: CombType, v: int) -> str:
    kind, idx = t.leaves[v]
    if kind == REAL:
        return f"R{idx}"
    if kind == COMPLEX:
        return f"C{idx}"
    e = t.degree.ends[idx]
    x, y = e.direction
    return f"F{idx}({x},{y})" if e.fixed else f"y({x},{y})"


def _encode_from(t: CombType, v: int, parent: Optional[int]) -> str:
    if v in t.leaves:
        return _leaf_code(t, v)
    parts = sorted(_encode_from(t, w, v) for w in t.adjacency[v] if w != parent)
    return "V(" + ",".join(parts) + ")"


def _centroids(t: CombType) -> List[int]:
    n = len(t.adjacency)
    size = {}
    parent = {0: None}
    order = [0]
    for v in order:
        for w in t.adjacency[v]:
            if w not in parent:
                parent[w] = v
                order.append(w)
    for v in reversed(order):
        size[v] = 1 + sum(size[w] for w in t.adjacency[v] if parent.get(w) == v)
    best, out = None, []
    for v in t.nodes:
        heaviest = n - size[v]
        for w in t.adjacency[v]:
            if parent.get(w) == v:
                heaviest = max(heaviest, size[w])
        if best is None or heaviest < best:
            best, out = heaviest, [v]
        elif heaviest == best:
            out.append(v)
    return out


def canonical_encoding(t: CombType) -> str:
    """Label-independent string for the type (free ends interchangeable)."""
    return min(_encode_from(t, c, None) for c in _centroids(t))


def from_edges(degree: Degree, leaves: Dict[int, Tuple[str, int]], edges) -> CombType:
    n = 1 + max(max(e) for e in edges)
    adj: List[List[int]] = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    t = CombType(degree, tuple(tuple(x) for x in adj), dict(leaves))
    return t
