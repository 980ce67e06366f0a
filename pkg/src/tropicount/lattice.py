"""Exact lattice and Gaussian-rational arithmetic.

Everything here is integer or :class:`fractions.Fraction` based; the counting
code never touches floating point.
"""
from fractions import Fraction
from math import gcd
from typing import NamedTuple, Tuple, Union


class InvalidDirection(ValueError):
    pass


class LatticeVec(NamedTuple):
    x: int
    y: int

    def __add__(self, other):
        return LatticeVec(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return LatticeVec(self.x - other[0], self.y - other[1])

    def __neg__(self):
        return LatticeVec(-self.x, -self.y)

    def scale(self, k: int) -> "LatticeVec":
        return LatticeVec(k * self.x, k * self.y)

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0


ZERO = LatticeVec(0, 0)


def vec(v) -> LatticeVec:
    return v if isinstance(v, LatticeVec) else LatticeVec(int(v[0]), int(v[1]))


def det2(v, w) -> int:
    """Signed determinant of the 2x2 matrix with columns ``v`` and ``w``."""
    return v[0] * w[1] - v[1] * w[0]


def weight_and_parity(v) -> Tuple[int, str]:
    """Return ``(weight, "even"|"odd")`` of a nonzero lattice vector."""
    x, y = v
    if x == 0 and y == 0:
        raise InvalidDirection("zero vector has no weight")
    w = gcd(abs(x), abs(y))
    parity = "even" if x % 2 == 0 and y % 2 == 0 else "odd"
    return w, parity


def weight(v) -> int:
    return gcd(abs(v[0]), abs(v[1]))


def is_even(v) -> bool:
    return v[0] % 2 == 0 and v[1] % 2 == 0


def primitive(v) -> LatticeVec:
    w = weight(v)
    if w == 0:
        raise InvalidDirection("zero vector has no primitive direction")
    return LatticeVec(v[0] // w, v[1] // w)


class GaussRat:
    """A Gaussian rational ``re + im*i`` with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, float) or isinstance(im, float):
            raise TypeError("floating point parts are not accepted")
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def _coerce(cls, other) -> "GaussRat":
        if isinstance(other, GaussRat):
            return other
        if isinstance(other, (int, Fraction)):
            return cls(other, 0)
        if isinstance(other, complex):
            raise TypeError("floating point complex numbers are not accepted")
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussRat(self.re * o.re - self.im * o.im,
                        self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussRat({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


_IPOW = (GaussRat(1, 0), GaussRat(0, 1), GaussRat(-1, 0), GaussRat(0, -1))


def ipow(n: int) -> GaussRat:
    """``i**n`` for any integer ``n``."""
    return _IPOW[n % 4]


Number = Union[int, Fraction]


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; floats are rejected to keep values exact."""
    if isinstance(text, bool):
        raise ValueError("boolean is not a rational")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"rational must be given as a string, got {text!r}")
    s = text.strip()
    if not s or any(c in s for c in ".eE"):
        raise ValueError(f"not an exact rational: {text!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {text!r}") from exc


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
