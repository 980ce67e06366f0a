"""Weight sequences and the multinomial coefficients of the recursion.

A weight sequence is stored as a tuple of non-negative integers without
trailing zeros; entry ``k-1`` counts the ends of weight ``k``.
"""
from itertools import product
from math import factorial
from typing import Iterable, Iterator, List, Sequence, Tuple

WeightSeq = Tuple[int, ...]


class InvalidMultinomial(ValueError):
    pass


def canon(a: Iterable[int]) -> WeightSeq:
    t = [int(x) for x in a]
    if any(x < 0 for x in t):
        raise ValueError(f"negative entry in weight sequence {t}")
    while t and t[-1] == 0:
        t.pop()
    return tuple(t)


def unit(k: int) -> WeightSeq:
    """The sequence e_k with a single 1 at weight ``k``."""
    if k < 1:
        raise ValueError("weights start at 1")
    return (0,) * (k - 1) + (1,)


def seq_add(a: Sequence[int], b: Sequence[int]) -> WeightSeq:
    n = max(len(a), len(b))
    return canon((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def seq_sub(a: Sequence[int], b: Sequence[int]):
    """``a - b`` or ``None`` when some entry would go negative."""
    n = max(len(a), len(b))
    diff = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    if any(x < 0 for x in diff):
        return None
    return canon(diff)


def leq(a: Sequence[int], b: Sequence[int]) -> bool:
    return seq_sub(b, a) is not None


def get(a: Sequence[int], k: int) -> int:
    return a[k - 1] if 0 < k <= len(a) else 0


def stats(a: Sequence[int]) -> Tuple[int, int]:
    """``(|a|, Ia)``: number of ends and total weight."""
    return sum(a), sum((i + 1) * x for i, x in enumerate(a))


def size(a) -> int:
    return sum(a)


def total_weight(a) -> int:
    return sum((i + 1) * x for i, x in enumerate(a))


def multinomial(n: int, parts: Sequence[int]) -> int:
    if any(p < 0 for p in parts) or sum(parts) > n:
        raise InvalidMultinomial(f"cannot split {n} into {list(parts)}")
    out = factorial(n)
    for p in parts:
        out //= factorial(p)
    return out // factorial(n - sum(parts))


def seq_multinomial(a: Sequence[int], parts: Sequence[Sequence[int]]) -> int:
    width = max([len(a)] + [len(p) for p in parts])
    out = 1
    for i in range(width):
        ai = a[i] if i < len(a) else 0
        out *= multinomial(ai, [p[i] if i < len(p) else 0 for p in parts])
    return out


def _compositions(n: int, l: int, exact: bool) -> List[Tuple[int, ...]]:
    if l == 0:
        return [()] if (n == 0 or not exact) else []
    out = []
    for first in range(n + 1):
        for rest in _compositions(n - first, l - 1, exact):
            out.append((first,) + rest)
    return out


def enumerate_splits(a: Sequence[int], l: int, mode: str = "exact") -> Iterator[Tuple[WeightSeq, ...]]:
    """Ordered ``l``-tuples of sequences summing to ``a`` (or bounded by it)."""
    if mode not in ("exact", "at_most"):
        raise ValueError(f"unknown split mode {mode!r}")
    exact = mode == "exact"
    a = canon(a)
    if l == 0:
        if not (exact and a):
            yield ()
        return
    per_weight = [_compositions(x, l, exact) for x in a]
    for choice in product(*per_weight):
        yield tuple(canon(c[j] for c in choice) for j in range(l))


def sequences_of_weight(w: int) -> List[WeightSeq]:
    """All sequences ``a`` with ``Ia = w``."""
    out = []

    def rec(i, rem, cur):
        if i > w:
            if rem == 0:
                out.append(canon(cur))
            return
        for c in range(rem // i + 1):
            rec(i + 1, rem - c * i, cur + [c])

    rec(1, w, [])
    return out


def format_seq(a: Sequence[int]) -> str:
    a = canon(a)
    return ",".join(str(x) for x in a) if a else "0"


def parse_seq(text: str) -> WeightSeq:
    text = text.strip().strip("()")
    if not text:
        return ()
    try:
        return canon(int(x) for x in text.split(","))
    except ValueError as exc:
        raise ValueError(f"bad weight sequence {text!r}") from exc
