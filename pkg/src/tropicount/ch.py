"""Caporaso-Harris type recursion for relative broccoli invariants N^d(alpha, beta, s).

Formula (a) moves a real point far to the left, formula (b) a complex one.
The default policy uses (a) whenever there is a real point (r > 0).
"""
import os
import tempfile
import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from . import __version__
from .lattice import format_rational, parse_rational
from .seq import (WeightSeq, canon, format_seq, get, multinomial, parse_seq,
                  seq_add, seq_multinomial, seq_sub, sequences_of_weight, total_weight,
                  unit)

CACHE_VERSION = f"tropicount-ch-cache {__version__} 1"


class InvalidKey(ValueError):
    pass


class InvariantKey(NamedTuple):
    d: int
    alpha: WeightSeq
    beta: WeightSeq
    s: int

    @property
    def r(self) -> int:
        return 2 * self.d + sum(self.beta) - 2 * self.s - 1


def make_key(d: int, alpha: Sequence[int], beta: Sequence[int], s: int) -> InvariantKey:
    alpha, beta = canon(alpha), canon(beta)
    key = InvariantKey(int(d), alpha, beta, int(s))
    if key.d < 1:
        raise InvalidKey("d must be at least 1")
    if key.s < 0:
        raise InvalidKey("s must be non-negative")
    if total_weight(alpha) + total_weight(beta) != key.d:
        raise InvalidKey(f"I(alpha) + I(beta) must equal d={d}")
    if key.r < 0:
        raise InvalidKey(f"r = 2d + |beta| - 2s - 1 = {key.r} is negative")
    return key


def _r(d: int, beta, s: int) -> int:
    return 2 * d + sum(beta) - 2 * s - 1


@dataclass(frozen=True)
class Component:
    d: int
    alpha: WeightSeq
    beta: WeightSeq
    s: int
    k: int


@dataclass(frozen=True)
class TermTrace:
    case: str
    coefficient: Fraction
    children: Tuple[InvariantKey, ...]
    k: Tuple[int, ...] = ()
    l: int = 0
    alpha_rest: WeightSeq = ()
    components: Tuple[Component, ...] = ()


def _pairs(d: int):
    """All (alpha, beta) with I(alpha) + I(beta) = d."""
    out = []
    for w in range(d + 1):
        for a in sequences_of_weight(w):
            for b in sequences_of_weight(d - w):
                out.append((a, b))
    return out


def _sign_k(k: int) -> int:
    """M_k: k for odd k and -1 for even k."""
    return k if k % 2 else -1


def _sign_k_tilde(k: int) -> int:
    """The variant used for the first floor component: k if odd, else 1."""
    return k if k % 2 else 1


def _even_left_factor(alpha_rest) -> int:
    out = 1
    for m in range(2, len(alpha_rest) + 1, 2):
        out *= (-m) ** alpha_rest[m - 1]
    return out


def _terms_a(key: InvariantKey) -> List[TermTrace]:
    d, a, b, s = key
    out = []
    for k in range(1, len(b) + 1, 2):
        if get(b, k) >= 1:
            child = InvariantKey(d, seq_add(a, unit(k)), seq_sub(b, unit(k)), s)
            out.append(TermTrace("A", Fraction(1), (child,), (k,)))
    out.extend(_floor_terms(key, "D"))
    return out


def _terms_b(key: InvariantKey) -> List[TermTrace]:
    d, a, b, s = key
    r = key.r
    out = []
    for k1 in range(1, d + 1):
        for k2 in range(1, d + 1):
            if k1 % 2 == 0 and k2 % 2 == 0:
                continue
            nb = seq_sub(b, unit(k1))
            nb = seq_sub(nb, unit(k2)) if nb is not None else None
            if nb is not None and _r(d, nb, s - 1) >= 0:
                child = InvariantKey(d, seq_add(a, unit(k1 + k2)), nb, s - 1)
                out.append(TermTrace("B", Fraction(-1, 2), (child,), (k1, k2)))
    for k1 in range(1, d + 1):
        for k2 in range(1, d + 1):
            if k1 % 2 == 0 and k2 % 2 == 0:
                continue
            bb = seq_sub(b, unit(k1 + k2))
            if bb is None:
                continue
            for a1 in _subseqs(a):
                a2 = seq_sub(a, a1)
                for b1 in _subseqs(bb):
                    b2 = seq_sub(bb, b1)
                    d1 = total_weight(a1) + k1 + total_weight(b1)
                    d2 = total_weight(a2) + k2 + total_weight(b2)
                    if d1 < 1 or d2 < 1 or d1 + d2 != d:
                        continue
                    for s1 in range(s):
                        s2 = s - 1 - s1
                        r1, r2 = _r(d1, b1, s1), _r(d2, b2, s2)
                        if r1 < 0 or r2 < 0:
                            continue
                        assert r1 + r2 == r, "dimension bookkeeping in case C"
                        coef = (Fraction(1, 2) * multinomial(s - 1, [s1, s2])
                                * multinomial(r, [r1, r2]) * seq_multinomial(a, [a1, a2]))
                        kids = (InvariantKey(d1, seq_add(a1, unit(k1)), b1, s1),
                                InvariantKey(d2, seq_add(a2, unit(k2)), b2, s2))
                        comps = (Component(d1, a1, b1, s1, k1), Component(d2, a2, b2, s2, k2))
                        out.append(TermTrace("C", coef, kids, (k1, k2), 2, (), comps))
    out.extend(_floor_terms(key, "E"))
    out.extend(_floor_terms(key, "F"))
    return out


def _subseqs(a):
    for t in product(*[range(x + 1) for x in a]):
        yield canon(t)


def _floor_terms(key: InvariantKey, case: str) -> List[TermTrace]:
    """Terms where the moved point lies on a floor of the degenerated curve.

    The components beyond the floor are listed as ordered tuples, matching the
    1/l! (resp. 1/(l-1)!) normalisation.
    """
    d, a, b, s = key
    r = key.r
    out = []
    comps = [(dj, aj, bj) for dj in range(1, d) for aj, bj in _pairs(dj)
             if seq_sub(a, aj) is not None]
    firsts = [(dj, aj, bj, kk) for dj in range(1, d) for kk in range(1, dj + 1)
              for aj, bj in _pairs(dj - kk) if seq_sub(a, aj) is not None]
    if case == "E":
        ks = [k for k in range(1, d + 1) if get(b, k) >= 1]
    else:
        ks = [None]
    for k in ks:
        if case == "E":
            target, s_left, r_total = seq_sub(b, unit(k)), s - 1, r
        elif case == "D":
            target, s_left, r_total = b, s, r - 1
        else:
            target, s_left, r_total = b, s - 1, r
        if s_left < 0 or r_total < 0:
            continue
        for l in range(0, d):
            if case == "F" and l == 0:
                continue
            if l == 0:
                iterable = [((), None)]
            elif case == "F":
                # the first component also carries the end of weight k1
                iterable = ((((f[0], f[1], f[2]),) + rest, f[3]) for f in firsts
                            for rest in product(comps, repeat=l - 1))
            else:
                iterable = ((tup, None) for tup in product(comps, repeat=l))
            for tup, k1 in iterable:
                if sum(t[0] for t in tup) != d - 1:
                    continue
                asum: WeightSeq = ()
                for t in tup:
                    asum = seq_add(asum, t[1])
                a_rest = seq_sub(a, asum)
                if a_rest is None:
                    continue
                # strict inequality; for E equality is allowed (see notes)
                if case != "E" and not any(a_rest):
                    continue
                choices = []
                for j, t in enumerate(tup):
                    if case == "F" and j == 0:
                        choices.append([k1])
                    else:
                        choices.append([kk for kk in range(1, len(t[2]) + 1) if get(t[2], kk) >= 1])
                for kt in product(*choices):
                    bs: WeightSeq = ()
                    for j, t in enumerate(tup):
                        if case == "F" and j == 0:
                            bs = seq_add(bs, t[2])
                        else:
                            bs = seq_add(bs, seq_sub(t[2], unit(kt[j])))
                    if bs != target:
                        continue
                    for st in product(range(s_left + 1), repeat=l):
                        if sum(st) != s_left:
                            continue
                        rs = []
                        for j, t in enumerate(tup):
                            dj = t[0]
                            rs.append(_r(dj, t[2], st[j]))
                        if any(x < 0 for x in rs):
                            continue
                        assert sum(rs) == r_total, f"dimension bookkeeping in case {case}"
                        coef = Fraction(1, factorial(l - 1 if case == "F" else l))
                        coef *= (multinomial(s_left, list(st)) * multinomial(r_total, rs)
                                 * seq_multinomial(a, [t[1] for t in tup]))
                        coef *= _even_left_factor(a_rest)
                        for j in range(l):
                            if case == "F" and j == 0:
                                continue
                            if kt[j] % 2 == 0:
                                coef *= kt[j]
                            coef *= get(tup[j][2], kt[j])
                        if case == "E":
                            coef *= _sign_k(k)
                        if case == "F":
                            coef *= _sign_k_tilde(kt[0])
                        kids = []
                        cs = []
                        for j, t in enumerate(tup):
                            if case == "F" and j == 0:
                                kids.append(InvariantKey(t[0], seq_add(t[1], unit(kt[0])), t[2], st[j]))
                            else:
                                kids.append(InvariantKey(t[0], t[1], t[2], st[j]))
                            cs.append(Component(t[0], t[1], t[2], st[j], kt[j]))
                        kk = (k,) if case == "E" else ()
                        out.append(TermTrace(case, coef, tuple(kids), kk + tuple(kt), l,
                                             a_rest, tuple(cs)))
    return out


def ch_terms(key: InvariantKey, formula: Optional[str] = None) -> List[TermTrace]:
    """Every admissible term for ``key`` under formula "a" or "b"."""
    key = make_key(*key)
    if formula is None:
        formula = "a" if key.r > 0 else "b"
    if formula == "a":
        if key.r <= 0:
            raise InvalidKey("formula (a) needs a real point (r > 0)")
        return _terms_a(key)
    if formula == "b":
        if key.s <= 0:
            raise InvalidKey("formula (b) needs a complex point (s > 0)")
        return _terms_b(key)
    raise ValueError(f"unknown formula {formula!r}")


class Engine:
    """Memoized evaluator; the memo may be shared and persisted."""

    def __init__(self, cache_dir: Optional[str] = None):
        self.memo: Dict[InvariantKey, Fraction] = {}
        self.lock = threading.Lock()
        self.cache_dir = cache_dir
        self._loaded = 0
        if cache_dir:
            self._loaded = load_cache(cache_dir, self.memo)

    def value(self, key: InvariantKey, formula: Optional[str] = None) -> Fraction:
        key = make_key(*key)
        if formula is None:
            hit = self.memo.get(key)
            if hit is not None:
                return hit
        total = Fraction(0)
        for term in ch_terms(key, formula):
            v = term.coefficient
            for child in term.children:
                if v == 0:
                    break
                v *= self.value(child)
            total += v
        if formula is None:
            with self.lock:
                self.memo.setdefault(key, total)
        return total

    def save(self) -> None:
        if self.cache_dir:
            save_cache(self.cache_dir, self.memo)


_default: Optional[Engine] = None


def default_engine() -> Engine:
    global _default
    if _default is None:
        _default = Engine(os.environ.get("TROPICOUNT_CACHE") or None)
    return _default


def ch_invariant(key, formula: Optional[str] = None, engine: Optional[Engine] = None) -> Fraction:
    """N^d(alpha, beta, s) as an exact rational."""
    eng = engine or default_engine()
    return eng.value(make_key(*key), formula)


# ------------------------------------------------------------------ table

def _row_order(pair):
    a, b = pair
    maxw = lambda x: len(x)
    if any(a):
        return (0, -maxw(a), sum(a), -maxw(b))
    return (1, -maxw(b), 0, 0)


def table_rows(d: int) -> List[Tuple[WeightSeq, WeightSeq]]:
    """Rows (alpha, beta) in the order used by the published degree-3 table."""
    return sorted(_pairs(d), key=_row_order)


def degree_table(d: int, engine: Optional[Engine] = None):
    """``[(alpha, beta, [N(s=0), N(s=1), ...]), ...]`` stopping where r < 0."""
    if d < 1:
        raise InvalidKey("d must be at least 1")
    out = []
    for a, b in table_rows(d):
        vals = []
        s = 0
        while _r(d, b, s) >= 0:
            vals.append(ch_invariant((d, a, b, s), engine=engine))
            s += 1
        out.append((a, b, vals))
    return out


def max_columns(d: int) -> int:
    return max(len(v) for _, _, v in degree_table(d))


# ------------------------------------------------------------------ cache

def _cache_path(cache_dir: str) -> str:
    return os.path.join(cache_dir, "ch-memo.txt")


def load_cache(cache_dir: str, memo: Dict) -> int:
    path = _cache_path(cache_dir)
    if not os.path.exists(path):
        return 0
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != CACHE_VERSION:
        return 0
    n = 0
    for line in lines[1:]:
        if not line.strip():
            continue
        d, a, b, s, v = line.split(";")
        memo[InvariantKey(int(d), parse_seq(a), parse_seq(b), int(s))] = parse_rational(v)
        n += 1
    return n


def save_cache(cache_dir: str, memo: Dict) -> None:
    os.makedirs(cache_dir, exist_ok=True)
    lines = [CACHE_VERSION]
    for key in sorted(memo):
        lines.append(";".join([str(key.d), format_seq(key.alpha), format_seq(key.beta),
                               str(key.s), format_rational(memo[key])]))
    atomic_write(_cache_path(cache_dir), "\n".join(lines) + "\n")


def atomic_write(path: str, text: str) -> None:
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
