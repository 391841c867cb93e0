"""Exact arithmetic in the quadratic field Q(sqrt 3).

Every coordinate of the three Euclidean triangle placements and of the
reflections generated by their edges lives in this field, so the billiard
and wallpaper code never needs a tolerance.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

__all__ = ["QuadRat", "SQRT3", "as_quad"]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


class QuadRat:
    """The number ``a + b*sqrt(3)`` with rational ``a`` and ``b``.

    Stored as integers ``(p + r*sqrt3) / s`` with ``s > 0`` and
    ``gcd(p, r, s) = 1``, which keeps arithmetic cheap.
    """

    __slots__ = ("_p", "_r", "_s")

    def __init__(self, a=0, b=0):
        a = _frac(a)
        b = _frac(b)
        s = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
        self._set(a.numerator * (s // a.denominator), b.numerator * (s // b.denominator), s)

    def _set(self, p: int, r: int, s: int):
        g = math.gcd(math.gcd(p, r), s)
        if g != 1:
            p //= g
            r //= g
            s //= g
        self._p, self._r, self._s = p, r, s

    @classmethod
    def _raw(cls, p: int, r: int, s: int) -> QuadRat:
        if s < 0:
            p, r, s = -p, -r, -s
        out = object.__new__(cls)
        out._set(p, r, s)
        return out

    @property
    def a(self) -> Fraction:
        return Fraction(self._p, self._s)

    @property
    def b(self) -> Fraction:
        return Fraction(self._r, self._s)

    # -- ring structure -------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            return QuadRat._raw(self._p + other * self._s, self._r, self._s)
        other = as_quad(other)
        if other is NotImplemented:
            return NotImplemented
        s1, s2 = self._s, other._s
        if s1 == s2:
            return QuadRat._raw(self._p + other._p, self._r + other._r, s1)
        return QuadRat._raw(self._p * s2 + other._p * s1, self._r * s2 + other._r * s1, s1 * s2)

    __radd__ = __add__

    def __neg__(self):
        return QuadRat._raw(-self._p, -self._r, self._s)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = as_quad(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = as_quad(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, int):
            return QuadRat._raw(self._p * other, self._r * other, self._s)
        other = as_quad(other)
        if other is NotImplemented:
            return NotImplemented
        p1, r1, p2, r2 = self._p, self._r, other._p, other._r
        return QuadRat._raw(p1 * p2 + 3 * r1 * r2, p1 * r2 + r1 * p2, self._s * other._s)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm ``a^2 - 3 b^2``; zero only for zero."""
        return Fraction(self._p * self._p - 3 * self._r * self._r, self._s * self._s)

    def conjugate(self) -> QuadRat:
        return QuadRat._raw(self._p, -self._r, self._s)

    def __truediv__(self, other):
        if isinstance(other, int):
            if other == 0:
                raise ZeroDivisionError("QuadRat division by zero")
            return QuadRat._raw(self._p, self._r, self._s * other)
        other = as_quad(other)
        if other is NotImplemented:
            return NotImplemented
        p2, r2, s2 = other._p, other._r, other._s
        n = p2 * p2 - 3 * r2 * r2
        if n == 0:
            raise ZeroDivisionError("QuadRat division by zero")
        # (x / s1) / ((p2 + r2 rt3) / s2) = x (p2 - r2 rt3) s2 / (s1 n)
        p1, r1 = self._p, self._r
        return QuadRat._raw((p1 * p2 - 3 * r1 * r2) * s2, (r1 * p2 - p1 * r2) * s2, self._s * n)

    def __rtruediv__(self, other):
        other = as_quad(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return QuadRat(1) / self ** (-n)
        result = QuadRat(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- order ------------------------------------------------------------

    def sign(self) -> int:
        p, r = self._p, self._r
        sa = (p > 0) - (p < 0)
        sb = (r > 0) - (r < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 against 3 b^2
        d = p * p - 3 * r * r
        sd = (d > 0) - (d < 0)
        return sa * sd

    def __eq__(self, other):
        if isinstance(other, int):
            return self._r == 0 and self._s == 1 and self._p == other
        other = as_quad(other)
        if other is NotImplemented:
            return NotImplemented
        return self._p == other._p and self._r == other._r and self._s == other._s

    def __hash__(self):
        if self._r == 0:
            return hash(Fraction(self._p, self._s))
        return hash((self._p, self._r, self._s))

    def _cmp(self, other) -> int:
        other = as_quad(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign()

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __bool__(self):
        return bool(self._p) or bool(self._r)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- conversions ------------------------------------------------------

    def __float__(self):
        return (self._p + self._r * math.sqrt(3.0)) / self._s

    def is_rational(self) -> bool:
        return self._r == 0

    def __repr__(self):
        return f"QuadRat({str(self.a)!r}, {str(self.b)!r})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        tail = "sqrt3" if abs(self.b) == 1 else f"{abs(self.b)}*sqrt3"
        if self.a == 0:
            return tail if self.b > 0 else f"-{tail}"
        op = "+" if self.b > 0 else "-"
        return f"{self.a}{op}{tail}"

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b)}

    @classmethod
    def from_json(cls, obj) -> QuadRat:
        if isinstance(obj, dict):
            return cls(Fraction(obj["a"]), Fraction(obj.get("b", "0")))
        return cls.parse(str(obj))

    _TERM = re.compile(r"([+-]?)\s*([0-9/]*)\s*(\*?\s*sqrt3)?")

    @classmethod
    def parse(cls, text: str) -> QuadRat:
        """Parse forms such as ``"1/2"``, ``"1/2+1/6*sqrt3"`` or ``"-sqrt3"``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty number")
        a = Fraction(0)
        b = Fraction(0)
        pos = 0
        while pos < len(s):
            m = cls._TERM.match(s, pos)
            if m is None or m.end() == pos:
                raise ValueError(f"cannot parse {text!r} as a + b*sqrt3")
            sign, coeff, root = m.groups()
            if not coeff and not root:
                raise ValueError(f"cannot parse {text!r} as a + b*sqrt3")
            value = Fraction(coeff) if coeff else Fraction(1)
            if sign == "-":
                value = -value
            if root:
                b += value
            else:
                a += value
            pos = m.end()
        return cls(a, b)


SQRT3 = QuadRat(0, 1)


def as_quad(x):
    if isinstance(x, QuadRat):
        return x
    if isinstance(x, int):
        return QuadRat._raw(x, 0, 1)
    if isinstance(x, Fraction):
        return QuadRat._raw(x.numerator, 0, x.denominator)
    return NotImplemented
