"""The 2-adic side: points, discs, Haar measure, step functions and distributions on Z_2.

Haar measure is normalized so that ``mu(Z_2) = 1``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .coherent import CoeffSeq, renorm_pairing
from .scalar import HALF, ONE, ZERO, ParseError, Scalar, as_scalar


@dataclass(frozen=True)
class DyadicPoint:
    """``sum_i d_i 2^i`` with digits eventually equal to ``tail``."""

    prefix: tuple[int, ...]
    tail: int = 0

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(int(d) for d in self.prefix))
        if any(d not in (0, 1) for d in self.prefix) or self.tail not in (0, 1):
            raise ValueError("2-adic digits must be 0 or 1")

    @classmethod
    def from_bits(cls, bits: str, tail: int = 0) -> DyadicPoint:
        return cls(tuple(int(b) for b in bits), tail)

    @classmethod
    def from_seq(cls, seq: CoeffSeq) -> DyadicPoint:
        if not seq.is_binary():
            raise ValueError(f"{seq} is not a binary sequence")
        return cls(tuple(int(u.re) for u in seq.prefix), int(seq.tail.re))

    def digit(self, i: int) -> int:
        return self.prefix[i] if i < len(self.prefix) else self.tail

    def residue(self, n: int) -> int:
        """The point reduced mod ``2^n``."""
        return sum(self.digit(i) << i for i in range(n))


def val2_diff(x: DyadicPoint, y: DyadicPoint) -> int | None:
    """2-adic valuation of ``x - y``: the first differing digit, ``None`` when ``x == y``."""
    m = max(len(x.prefix), len(y.prefix))
    for i in range(m):
        if x.digit(i) != y.digit(i):
            return i
    return None if x.tail == y.tail else m


def norm2_diff(x: DyadicPoint, y: DyadicPoint) -> Fraction:
    v = val2_diff(x, y)
    return Fraction(0) if v is None else Fraction(1, 2**v)


class DiscRelation(enum.Enum):
    EQUAL = "equal"
    FIRST_INSIDE_SECOND = "first_inside_second"
    SECOND_INSIDE_FIRST = "second_inside_first"
    DISJOINT = "disjoint"


@dataclass(frozen=True)
class Disc:
    """``D(center, 2^-level)``: the residue class ``center mod 2^level``."""

    level: int
    center: int = 0

    def __post_init__(self):
        if self.level < 0:
            raise ValueError("disc level must be non-negative")
        object.__setattr__(self, "center", self.center % (1 << self.level))

    @classmethod
    def around(cls, point: DyadicPoint, level: int) -> Disc:
        return cls(level, point.residue(level))

    @classmethod
    def from_bits(cls, bits: str) -> Disc:
        """Disc of level ``len(bits)`` whose center has digits ``bits`` (lowest first)."""
        return cls(len(bits), sum(int(b) << i for i, b in enumerate(bits)))

    @property
    def bits(self) -> str:
        return "".join(str((self.center >> i) & 1) for i in range(self.level))

    @property
    def radius(self) -> Fraction:
        return Fraction(1, 1 << self.level)

    def contains(self, point: DyadicPoint) -> bool:
        return point.residue(self.level) == self.center

    def to_json(self) -> dict:
        return {"level": self.level, "center": self.bits}

    @classmethod
    def from_json(cls, obj: dict) -> Disc:
        try:
            bits = obj["center"]
            disc = cls.from_bits(bits)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed disc JSON: {obj!r}") from exc
        if disc.level != obj.get("level", disc.level):
            raise ParseError(f"disc level {obj['level']} does not match center {bits!r}")
        return disc


def disc_relation(d1: Disc, d2: Disc) -> DiscRelation:
    lo = min(d1.level, d2.level)
    if d1.center % (1 << lo) != d2.center % (1 << lo):
        return DiscRelation.DISJOINT
    if d1.level == d2.level:
        return DiscRelation.EQUAL
    if d1.level > d2.level:
        return DiscRelation.FIRST_INSIDE_SECOND
    return DiscRelation.SECOND_INSIDE_FIRST


def haar_measure(d: Disc) -> Scalar:
    return Scalar(Fraction(1, 1 << d.level))


class LocallyConstantFn:
    """Step function constant on the residue classes mod ``2^level``.

    ``values[b]`` is the value on the class of ``b = sum_i b_i 2^i``.
    Equality compares at the common refinement.
    """

    __slots__ = ("level", "values")

    def __init__(self, level: int, values: Sequence):
        values = tuple(as_scalar(x) for x in values)
        if level < 0 or len(values) != 1 << level:
            raise ValueError(f"level {level} needs {1 << max(level, 0)} values, got {len(values)}")
        self.level = level
        self.values = values

    @classmethod
    def constant(cls, c) -> LocallyConstantFn:
        return cls(0, (c,))

    @classmethod
    def zero(cls) -> LocallyConstantFn:
        return cls.constant(ZERO)

    def __repr__(self) -> str:
        return f"LocallyConstantFn({self.level}, [{', '.join(map(str, self.values))}])"

    def __call__(self, x: DyadicPoint) -> Scalar:
        return self.values[x.residue(self.level)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, LocallyConstantFn):
            return NotImplemented
        n = max(self.level, other.level)
        return refine(self, n).values == refine(other, n).values

    def __hash__(self) -> int:
        return hash(coarsen(self).values)

    def __add__(self, other: LocallyConstantFn) -> LocallyConstantFn:
        return add(self, other)

    def __neg__(self) -> LocallyConstantFn:
        return scale(-ONE, self)

    def __sub__(self, other: LocallyConstantFn) -> LocallyConstantFn:
        return add(self, -other)

    def __mul__(self, other: LocallyConstantFn) -> LocallyConstantFn:
        return pointwise_mul(self, other)

    def conj(self) -> LocallyConstantFn:
        return LocallyConstantFn(self.level, [x.conj() for x in self.values])

    def to_json(self) -> dict:
        return {"level": self.level, "values": [str(x) for x in self.values]}

    @classmethod
    def from_json(cls, obj: dict) -> LocallyConstantFn:
        try:
            return cls(int(obj["level"]), [Scalar.parse(x) for x in obj["values"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed function JSON: {obj!r}") from exc


def indicator(d: Disc) -> LocallyConstantFn:
    values = [ZERO] * (1 << d.level)
    values[d.center] = ONE
    return LocallyConstantFn(d.level, values)


def refine(f: LocallyConstantFn, n: int) -> LocallyConstantFn:
    if n < f.level:
        raise ValueError(f"cannot refine level {f.level} down to {n}")
    if n == f.level:
        return f
    mask = (1 << f.level) - 1
    return LocallyConstantFn(n, [f.values[b & mask] for b in range(1 << n)])


def coarsen(f: LocallyConstantFn) -> LocallyConstantFn:
    """Lowest-level representative of the same function."""
    while f.level > 0:
        half = 1 << (f.level - 1)
        if f.values[:half] != f.values[half:]:
            break
        f = LocallyConstantFn(f.level - 1, f.values[:half])
    return f


def _common(f: LocallyConstantFn, g: LocallyConstantFn):
    n = max(f.level, g.level)
    return n, refine(f, n).values, refine(g, n).values


def add(f: LocallyConstantFn, g: LocallyConstantFn) -> LocallyConstantFn:
    n, a, b = _common(f, g)
    return LocallyConstantFn(n, [x + y for x, y in zip(a, b)])


def scale(c, f: LocallyConstantFn) -> LocallyConstantFn:
    c = as_scalar(c)
    return LocallyConstantFn(f.level, [c * x for x in f.values])


def pointwise_mul(f: LocallyConstantFn, g: LocallyConstantFn) -> LocallyConstantFn:
    n, a, b = _common(f, g)
    return LocallyConstantFn(n, [x * y for x, y in zip(a, b)])


def integrate(f: LocallyConstantFn) -> Scalar:
    """Haar integral over Z_2: each level-``n`` cell has measure ``2^-n``."""
    return sum(f.values, ZERO) * Scalar(Fraction(1, 1 << f.level))


def l2_pairing(f: LocallyConstantFn, g: LocallyConstantFn) -> Scalar:
    """``integral conj(f) g dx``."""
    return integrate(pointwise_mul(f.conj(), g))


def cell_state(level: int, b: int) -> CoeffSeq:
    """Truncated descriptor with binary prefix the digits of ``b`` mod ``2^level``."""
    return CoeffSeq(tuple((b >> i) & 1 for i in range(level)), HALF)


@dataclass(frozen=True)
class Delta:
    at: DyadicPoint


@dataclass(frozen=True)
class Induced:
    """Functional induced by a coherent state through the renormalized pairing."""

    by: CoeffSeq


@dataclass(frozen=True)
class Combo:
    parts: tuple[tuple[Scalar, "PadicDistribution"], ...]


PadicDistribution = Union[Delta, Induced, Combo]


def apply_distribution(dist: PadicDistribution, f: LocallyConstantFn) -> Scalar:
    if isinstance(dist, Delta):
        return f(dist.at)
    if isinstance(dist, Induced):
        # f = sum_b f_b 2^-n (2^n theta_n(x - b)), and 2^n theta_n(x - b) is the image of cell_state(n, b)
        n = f.level
        w = Scalar(Fraction(1, 1 << n))
        total = ZERO
        for b, fb in enumerate(f.values):
            if fb:
                total = total + fb * w * renorm_pairing(dist.by, cell_state(n, b))
        return total
    if isinstance(dist, Combo):
        return sum((as_scalar(c) * apply_distribution(d, f) for c, d in dist.parts), ZERO)
    raise TypeError(f"not a distribution: {dist!r}")
