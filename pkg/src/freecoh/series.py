"""Power series in ``t`` whose coefficients are eventually geometric.

A :class:`GeomTailSeries` stands for

    S(t) = sum_{i<m} a_i t^i + a_m t^m / (1 - r t)

and is the closed form of every coherent-state pairing.  The renormalized
limit ``lim_{t->2-} (1 - t/2) S(t)`` is extracted exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .scalar import HALF, ONE, ZERO, ParseError, Scalar, as_scalar

QUARTER = Fraction(1, 4)
LIMIT_POINT = Scalar(2)


class DivergentAt(ArithmeticError):
    """The series does not converge at the requested point."""

    def __init__(self, t: Scalar, ratio: Scalar):
        super().__init__(f"series with ratio {ratio} diverges at t = {t}")
        self.t = t
        self.ratio = ratio


class DivergentBeforeLimit(ArithmeticError):
    """The series diverges somewhere in [0, 2), so the t -> 2 limit is undefined."""

    def __init__(self, ratio: Scalar):
        super().__init__(f"tail ratio {ratio} has modulus > 1/2; no limit at t = 2")
        self.ratio = ratio


@dataclass(frozen=True)
class GeomTailSeries:
    prefix: tuple[Scalar, ...]
    tail_first: Scalar
    ratio: Scalar

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(as_scalar(a) for a in self.prefix))
        object.__setattr__(self, "tail_first", as_scalar(self.tail_first))
        object.__setattr__(self, "ratio", as_scalar(self.ratio))

    @property
    def tail_start(self) -> int:
        return len(self.prefix)

    def coefficient(self, i: int) -> Scalar:
        if i < 0:
            raise IndexError(i)
        m = len(self.prefix)
        if i < m:
            return self.prefix[i]
        return self.tail_first * self.ratio ** (i - m)

    def coefficients(self, n: int) -> list[Scalar]:
        """The first ``n`` coefficients ``a_0 .. a_{n-1}``."""
        out = list(self.prefix[:n])
        a = self.tail_first
        while len(out) < n:
            out.append(a)
            a = a * self.ratio
        return out

    def is_finite(self) -> bool:
        return not self.tail_first

    def scaled(self, c) -> GeomTailSeries:
        c = as_scalar(c)
        return GeomTailSeries(tuple(c * a for a in self.prefix), c * self.tail_first, self.ratio)

    def to_json(self) -> dict:
        return {
            "prefix": [str(a) for a in self.prefix],
            "tail_start": self.tail_start,
            "tail_first": str(self.tail_first),
            "ratio": str(self.ratio),
        }

    @classmethod
    def from_json(cls, obj: dict) -> GeomTailSeries:
        try:
            prefix = tuple(Scalar.parse(a) for a in obj["prefix"])
            s = cls(prefix, Scalar.parse(obj["tail_first"]), Scalar.parse(obj["ratio"]))
            start = obj.get("tail_start", len(prefix))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed series JSON: {obj!r}") from exc
        if start != len(prefix):
            raise ParseError(f"tail_start {start} does not match prefix length {len(prefix)}")
        return s


def _poly(coeffs: Sequence[Scalar], t: Scalar) -> Scalar:
    acc = ZERO
    for a in reversed(coeffs):
        acc = acc * t + a
    return acc


def _check_point(t: Scalar) -> None:
    if not t.is_real() or t.re < 0:
        raise ValueError(f"evaluation point must be a non-negative real, got {t}")


def evaluate(s: GeomTailSeries, t) -> Scalar:
    """Exact value of ``s`` at a real ``t >= 0``.

    Raises :class:`DivergentAt` when ``|r| t >= 1`` and the tail is nonzero.
    """
    t = as_scalar(t)
    _check_point(t)
    head = _poly(s.prefix, t)
    if s.is_finite():
        return head
    tr = t.re
    if s.ratio.abs2() * tr * tr >= 1:
        raise DivergentAt(t, s.ratio)
    return head + s.tail_first * t ** s.tail_start / (ONE - s.ratio * t)


def renorm_limit(s: GeomTailSeries) -> Scalar:
    """``lim_{t->2-} (1 - t/2) S(t)``.

    Cancelling ``(1 - t/2)`` against ``1 - r t`` gives ``a_m 2^m`` for
    ``r = 1/2``; any other ``|r| <= 1/2`` leaves a vanishing factor, and
    ``|r| > 1/2`` has a pole inside ``[0, 2)``.
    """
    if s.is_finite():
        return ZERO
    r2 = s.ratio.abs2()
    if r2 > QUARTER:
        raise DivergentBeforeLimit(s.ratio)
    if s.ratio == HALF:
        return s.tail_first * LIMIT_POINT ** s.tail_start
    return ZERO


def same_series(s1: GeomTailSeries, s2: GeomTailSeries) -> bool:
    """Coefficient-wise equality, regardless of where each tail is declared to start."""
    n = max(s1.tail_start, s2.tail_start) + 2
    return s1.coefficients(n) == s2.coefficients(n)


@dataclass(frozen=True)
class SeriesSum:
    """Finite formal sum of :class:`GeomTailSeries`; ``SeriesSum()`` is zero."""

    terms: tuple[GeomTailSeries, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    @classmethod
    def of(cls, *series: GeomTailSeries) -> SeriesSum:
        return cls(series)

    def __add__(self, other: SeriesSum) -> SeriesSum:
        if not isinstance(other, SeriesSum):
            return NotImplemented
        return SeriesSum(self.terms + other.terms)

    def coefficient(self, i: int) -> Scalar:
        return sum((s.coefficient(i) for s in self.terms), ZERO)

    def to_json(self) -> list[dict]:
        return [s.to_json() for s in self.terms]


def add(s1: SeriesSum, s2: SeriesSum) -> SeriesSum:
    return s1 + s2


def scale(c, s: SeriesSum) -> SeriesSum:
    return SeriesSum(tuple(term.scaled(c) for term in s.terms))


def evaluate_sum(s: SeriesSum, t) -> Scalar:
    return _total(evaluate(term, t) for term in s.terms)


def renorm_limit_sum(s: SeriesSum) -> Scalar:
    return _total(renorm_limit(term) for term in s.terms)


def _total(values: Iterable[Scalar]) -> Scalar:
    return sum(values, ZERO)
