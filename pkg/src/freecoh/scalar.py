"""Exact Gaussian rationals ``a + b*i`` with ``a, b`` in Q."""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from numbers import Rational


class ParseError(ValueError):
    """Malformed literal (scalar, sequence, JSON payload)."""


class Scalar:
    """Immutable Gaussian rational.

    Stored as ``(a + b*i) / d`` with ``d > 0`` and ``gcd(a, b, d) == 1``,
    which is canonical, so structural equality is value equality.  The
    ``re`` and ``im`` properties hand back reduced :class:`Fraction` s.
    """

    __slots__ = ("_a", "_b", "_d", "_h")

    def __init__(self, re: int | Fraction | str = 0, im: int | Fraction = 0):
        if isinstance(re, str):
            s = Scalar.parse(re)
            self._a, self._b, self._d, self._h = s._a, s._b, s._d, None
            return
        re, im = Fraction(re), Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        self._a = re.numerator * (d // re.denominator)
        self._b = im.numerator * (d // im.denominator)
        self._d = d
        self._h = None

    @classmethod
    def _make(cls, a: int, b: int, d: int) -> Scalar:
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(a, b, d)
        if g != 1:
            a //= g
            b //= g
            d //= g
        s = object.__new__(cls)
        s._a, s._b, s._d, s._h = a, b, d, None
        return s

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    def is_real(self) -> bool:
        return self._b == 0

    def real_part(self) -> Scalar:
        return self if self._b == 0 else Scalar._make(self._a, 0, self._d)

    def conj(self) -> Scalar:
        if self._b == 0:
            return self
        return Scalar._make(self._a, -self._b, self._d)

    def abs2(self) -> Fraction:
        """Squared modulus ``re**2 + im**2``."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        d1, d2 = self._d, o._d
        if d1 == d2:
            return Scalar._make(self._a + o._a, self._b + o._b, d1)
        return Scalar._make(self._a * d2 + o._a * d1, self._b * d2 + o._b * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        s = object.__new__(Scalar)
        s._a, s._b, s._d, s._h = -self._a, -self._b, self._d, None
        return s

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a1, b1, a2, b2 = self._a, self._b, o._a, o._b
        if b1 == 0 and b2 == 0:
            return Scalar._make(a1 * a2, 0, self._d * o._d)
        return Scalar._make(a1 * a2 - b1 * b2, a1 * b2 + a2 * b1, self._d * o._d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero Scalar")
        n2 = o._a * o._a + o._b * o._b
        a = (self._a * o._a + self._b * o._b) * o._d
        b = (self._b * o._a - self._a * o._b) * o._d
        return Scalar._make(a, b, self._d * n2)

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int) -> Scalar:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return ONE / (self ** -n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self) -> bool:
        return self._a != 0 or self._b != 0

    def __eq__(self, other) -> bool:
        if type(other) is Scalar:
            return self._a == other._a and self._b == other._b and self._d == other._d
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self._a == o._a and self._b == o._b and self._d == o._d

    def __hash__(self) -> int:
        # real values must hash like the equal int / Fraction
        if self._h is None:
            if self._b == 0:
                self._h = hash(Fraction(self._a, self._d))
            else:
                self._h = hash((self._a, self._b, self._d))
        return self._h

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r})"

    def __str__(self) -> str:
        re_, im_ = self.re, self.im
        if im_ == 0:
            return str(re_)
        sign = "+" if im_ > 0 else "-"
        return f"{re_}{sign}{abs(im_)}*i"

    @classmethod
    def parse(cls, text: str) -> Scalar:
        """Parse ``"p/q"``, ``"p/q+r/s*i"``, ``"r/s*i"``, ``"i"`` and friends."""
        s = text.replace(" ", "")
        real, imag = s, None
        if s.endswith("i"):
            body = s[:-1]
            starred = body.endswith("*")
            if starred:
                body = body[:-1]
            cut = max(body.rfind("+"), body.rfind("-"))
            if cut > 0:
                real, imag = body[:cut], body[cut:]
            else:
                real, imag = "", body
            if starred and imag in ("", "+", "-"):
                raise ParseError(f"not a Gaussian rational: {text!r}")
        try:
            if not s or (real == "" and imag is None):
                raise ValueError
            re_ = _fraction(real) if real else Fraction(0)
            if imag is None:
                im_ = Fraction(0)
            elif imag in ("", "+"):
                im_ = Fraction(1)
            elif imag == "-":
                im_ = Fraction(-1)
            else:
                im_ = _fraction(imag)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a Gaussian rational: {text!r}") from exc
        return cls(re_, im_)


_NUMBER_RE = re.compile(r"[+-]?\d+(?:/\d+)?")


def _fraction(text: str) -> Fraction:
    if not _NUMBER_RE.fullmatch(text):
        raise ValueError(text)
    return Fraction(text)


def _coerce(x) -> Scalar | None:
    if type(x) is Scalar:
        return x
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Rational)):
        return Scalar(Fraction(x))
    return None


def as_scalar(x) -> Scalar:
    """Coerce ints, Fractions, strings and Scalars to :class:`Scalar`."""
    if isinstance(x, str):
        return Scalar.parse(x)
    s = _coerce(x)
    if s is None:
        raise TypeError(f"cannot convert {type(x).__name__} to Scalar")
    return s


ZERO = Scalar(0)
ONE = Scalar(1)
HALF = Scalar(Fraction(1, 2))
