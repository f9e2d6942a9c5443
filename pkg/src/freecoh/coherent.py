"""Coherent-state descriptors and their closed-form pairings."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Sequence

from . import fock
from .fock import FockVector
from .scalar import HALF, ONE, ZERO, ParseError, Scalar, as_scalar
from .series import (
    DivergentAt,
    DivergentBeforeLimit,
    GeomTailSeries,
    evaluate,
    renorm_limit,
)

_BINARY = (ZERO, ONE)


@dataclass(frozen=True)
class CoeffSeq:
    """Eventually-constant sequence ``u_0 .. u_{m-1}`` followed by ``tail`` forever."""

    prefix: tuple[Scalar, ...]
    tail: Scalar

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(as_scalar(u) for u in self.prefix))
        object.__setattr__(self, "tail", as_scalar(self.tail))
        binary = self.tail in _BINARY and all(u in _BINARY for u in self.prefix)
        object.__setattr__(self, "_binary", binary)

    @classmethod
    def binary(cls, bits: str | Sequence[int], tail: int = 0) -> CoeffSeq:
        return cls(tuple(int(b) for b in bits), tail)

    @classmethod
    def truncated(cls, prefix: Sequence) -> CoeffSeq:
        """Truncated form: the given prefix, then 1/2 forever."""
        return cls(tuple(prefix), HALF)

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.prefix, self.tail))
            object.__setattr__(self, "_hash", h)
        return h

    def __len__(self) -> int:
        return len(self.prefix)

    def at(self, j: int) -> Scalar:
        return self.prefix[j] if j < len(self.prefix) else self.tail

    def is_binary(self) -> bool:
        return self._binary

    def is_truncated(self) -> bool:
        return self.tail == HALF

    def bits(self) -> str:
        if not self.is_binary():
            raise ValueError(f"{self} is not a binary sequence")
        return "".join(str(u) for u in self.prefix)

    def __str__(self) -> str:
        return to_literal(self)

    def to_json(self) -> dict:
        return {"prefix": [str(u) for u in self.prefix], "tail": str(self.tail)}

    @classmethod
    def from_json(cls, obj) -> CoeffSeq:
        if isinstance(obj, str):
            return parse_seq(obj)
        try:
            return cls(tuple(Scalar.parse(u) for u in obj["prefix"]), Scalar.parse(obj["tail"]))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed sequence JSON: {obj!r}") from exc


def parse_seq(text: str) -> CoeffSeq:
    """Parse ``"prefix|tail"``.

    The prefix is comma-separated scalars (``"1/3,1/2+i"``), a bit string
    (``"011"``), a single scalar, or empty.
    """
    if text.count("|") != 1:
        raise ParseError(f"sequence literal needs exactly one '|': {text!r}")
    head, tail = (part.strip() for part in text.split("|"))
    if "," in head:
        parts = head.split(",")
        if len(parts) == 2 and parts[1] == "":
            parts.pop()
        prefix = tuple(Scalar.parse(p) for p in parts)
    elif head and not head.strip("01"):
        prefix = tuple(Scalar(int(b)) for b in head)
    elif head:
        prefix = (Scalar.parse(head),)
    else:
        prefix = ()
    if not tail:
        raise ParseError(f"sequence literal has no tail: {text!r}")
    return CoeffSeq(prefix, Scalar.parse(tail))


def to_literal(seq: CoeffSeq) -> str:
    if all(u in _BINARY for u in seq.prefix):
        head = "".join(str(u) for u in seq.prefix)
    else:
        head = ",".join(str(u) for u in seq.prefix)
        if len(seq.prefix) == 1:
            head += ","
    return f"{head}|{seq.tail}"


def overlap(u: Scalar, v: Scalar) -> Scalar:
    """One-letter contraction ``conj(u) v + conj(1-u) (1-v)``."""
    return u.conj() * v + (ONE - u).conj() * (ONE - v)


def overlap_coeffs(u: CoeffSeq, v: CoeffSeq) -> tuple[list[Scalar], Scalar]:
    """Per-index overlaps up to the longer prefix, and the overlap of the tails."""
    m = max(len(u), len(v))
    return [overlap(u.at(j), v.at(j)) for j in range(m)], overlap(u.tail, v.tail)


@lru_cache(maxsize=1 << 16)
def pairing_series(u: CoeffSeq, v: CoeffSeq) -> GeomTailSeries:
    """``(X_U, X_V)`` as a series in ``t = lambda^2`` with ``a_i = prod_{j<i} c_j``."""
    coeffs, c = overlap_coeffs(u, v)
    prefix = []
    a = ONE
    for cj in coeffs:
        prefix.append(a)
        a = a * cj
    return GeomTailSeries(tuple(prefix), a, c)


def renorm_pairing(u: CoeffSeq, v: CoeffSeq) -> Scalar:
    return renorm_limit(pairing_series(u, v))


@dataclass(frozen=True)
class PairingReport:
    series: GeomTailSeries
    overlaps: tuple[Scalar, ...]
    tail_overlap: Scalar
    limit: Scalar | None
    error: str | None = None

    def to_json(self) -> dict:
        return {
            "series": self.series.to_json(),
            "overlaps": [str(c) for c in self.overlaps],
            "tail_overlap": str(self.tail_overlap),
            "limit": None if self.limit is None else str(self.limit),
            "error": self.error,
        }


def pairing_report(u: CoeffSeq, v: CoeffSeq) -> PairingReport:
    coeffs, c = overlap_coeffs(u, v)
    s = pairing_series(u, v)
    try:
        return PairingReport(s, tuple(coeffs), c, renorm_limit(s))
    except DivergentBeforeLimit:
        return PairingReport(s, tuple(coeffs), c, None, "DivergentBeforeLimit")


def first_mismatch(u: CoeffSeq, v: CoeffSeq) -> int | None:
    """Least index where two binary sequences differ; ``None`` if they are identical."""
    if not (u.is_binary() and v.is_binary()):
        raise ValueError("first_mismatch needs binary sequences")
    m = max(len(u), len(v))
    for j in range(m):
        if u.at(j) != v.at(j):
            return j
    return None if u.tail == v.tail else m


def rho_distance_sq(u: CoeffSeq, v: CoeffSeq, t) -> Scalar:
    """Squared Fock distance ``||X_U - X_V||^2`` at ``t = lambda^2 in (0, 1)``.

    For binary sequences first differing at index ``k`` this is
    ``2 t^(k+1) / (1 - t)``: the grade-``k`` components still coincide.
    """
    t = as_scalar(t)
    if not (u.is_binary() and v.is_binary()):
        raise ValueError("rho_distance_sq needs binary sequences")
    if not t.is_real() or t.re <= 0:
        raise ValueError(f"t must lie in (0, 1), got {t}")
    if t.re >= 1:
        raise DivergentAt(t, ONE)
    uu = _norm_sq_at(u, t)
    vv = _norm_sq_at(v, t)
    uv = evaluate(pairing_series(u, v), t)
    return uu + vv - 2 * uv.real_part()


@lru_cache(maxsize=1 << 12)
def _norm_sq_at(u: CoeffSeq, t: Scalar) -> Scalar:
    return evaluate(pairing_series(u, u), t)


def isometry_rhs(u: CoeffSeq, v: CoeffSeq, t) -> Scalar:
    """``t^(first_mismatch + 1)``, or 0 for equal sequences."""
    k = first_mismatch(u, v)
    return ZERO if k is None else as_scalar(t) ** (k + 1)


def eigen_residual(seq: CoeffSeq, lam, n: int) -> FockVector:
    """``(A_0 + A_1) X_N - lam X_N`` for the order-``n`` truncation ``X_N``."""
    if n < 1:
        raise ValueError("truncation order must be at least 1")
    lam = as_scalar(lam)
    x = fock.coherent_truncated(seq, lam, n)
    return fock.annihilate(0, x) + fock.annihilate(1, x) - x.scaled(lam)


def eigen_boundary(seq: CoeffSeq, lam, n: int) -> FockVector:
    """Expected residual ``-lam^(n+1) X^n``."""
    lam = as_scalar(lam)
    return fock.coherent_component(seq, n).scaled(-(lam ** (n + 1)))


def random_scalar(rng, bound: int = 9, real: bool = False) -> Scalar:
    """Gaussian rational with numerators in ``[-bound, bound]`` and denominators in ``[1, bound]``."""
    re_ = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
    if real:
        return Scalar(re_)
    return Scalar(re_, Fraction(rng.randint(-bound, bound), rng.randint(1, bound)))


def random_seq(rng, max_prefix: int = 6, tail=None, bound: int = 9) -> CoeffSeq:
    prefix = tuple(random_scalar(rng, bound) for _ in range(rng.randint(0, max_prefix)))
    return CoeffSeq(prefix, random_scalar(rng, bound) if tail is None else as_scalar(tail))
