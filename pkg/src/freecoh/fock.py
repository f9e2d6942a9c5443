"""Truncated free (Boltzmannian) Fock space over C + C, with exact coefficients.

Basis vectors are words over ``"0"``/``"1"``; the empty word is the vacuum.
Position 0 of a word is the outermost tensor factor, i.e. the one created
last, so ``create`` prepends and ``annihilate`` strips the head letter.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import TYPE_CHECKING, Iterator, Mapping

from .scalar import ONE, ZERO, ParseError, Scalar, as_scalar

if TYPE_CHECKING:
    from .coherent import CoeffSeq

LETTERS = ("0", "1")


class FockVector:
    """Finite linear combination of tensor words.  Zero coefficients are never stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[str, object] | None = None):
        clean: dict[str, Scalar] = {}
        for word, c in (terms or {}).items():
            if word.strip("01"):
                raise ValueError(f"word {word!r} is not over the alphabet {{0,1}}")
            c = as_scalar(c)
            if c:
                clean[word] = c
        self._terms = clean

    @classmethod
    def _wrap(cls, terms: dict[str, Scalar]) -> FockVector:
        v = object.__new__(cls)
        v._terms = terms
        return v

    @property
    def terms(self) -> Mapping[str, Scalar]:
        return MappingProxyType(self._terms)

    def __getitem__(self, word: str) -> Scalar:
        return self._terms.get(word, ZERO)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        return self._terms == other._terms

    def __repr__(self) -> str:
        body = ", ".join(f"{w!r}: {c}" for w, c in sorted(self._terms.items()))
        return f"FockVector({{{body}}})"

    @property
    def grade(self) -> int:
        """Largest word length present (0 for the vacuum and for the zero vector)."""
        return max((len(w) for w in self._terms), default=0)

    def component(self, n: int) -> FockVector:
        return FockVector._wrap({w: c for w, c in self._terms.items() if len(w) == n})

    def __add__(self, other: FockVector) -> FockVector:
        if not isinstance(other, FockVector):
            return NotImplemented
        out = dict(self._terms)
        for w, c in other._terms.items():
            s = out.get(w, ZERO) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return FockVector._wrap(out)

    def __neg__(self) -> FockVector:
        return FockVector._wrap({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: FockVector) -> FockVector:
        return self + (-other)

    def scaled(self, c) -> FockVector:
        c = as_scalar(c)
        if not c:
            return FockVector()
        return FockVector._wrap({w: c * x for w, x in self._terms.items()})

    def __rmul__(self, c) -> FockVector:
        return self.scaled(c)

    def to_json(self) -> dict[str, str]:
        return {w: str(c) for w, c in sorted(self._terms.items(), key=lambda kv: (len(kv[0]), kv[0]))}

    @classmethod
    def from_json(cls, obj: Mapping[str, str]) -> FockVector:
        try:
            return cls({w: Scalar.parse(c) for w, c in obj.items()})
        except (AttributeError, ValueError) as exc:
            raise ParseError(f"malformed Fock vector JSON: {obj!r}") from exc


VACUUM = FockVector({"": ONE})


def _letter(i) -> str:
    letter = str(i)
    if letter not in LETTERS:
        raise ValueError(f"mode index must be 0 or 1, got {i!r}")
    return letter


def create(i, v: FockVector) -> FockVector:
    """A_i^dagger: prepend letter ``i`` to every word."""
    letter = _letter(i)
    return FockVector._wrap({letter + w: c for w, c in v.terms.items()})


def annihilate(i, v: FockVector) -> FockVector:
    """A_i: keep words headed by ``i`` and strip the head; the vacuum goes to zero."""
    letter = _letter(i)
    return FockVector._wrap({w[1:]: c for w, c in v.terms.items() if w[:1] == letter})


def inner(v: FockVector, w: FockVector) -> Scalar:
    """Scalar product, conjugate-linear in ``v``."""
    a, b = v.terms, w.terms
    if len(a) <= len(b):
        pairs = ((c, b[word]) for word, c in a.items() if word in b)
    else:
        pairs = ((a[word], c) for word, c in b.items() if word in a)
    return sum((x.conj() * y for x, y in pairs), ZERO)


@dataclass(frozen=True)
class CCRReport:
    i: int
    j: int
    lhs: FockVector
    rhs: FockVector

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def check_ccr(i, j, v: FockVector) -> CCRReport:
    """Compare A_i A_j^dagger v against delta_ij v."""
    lhs = annihilate(i, create(j, v))
    rhs = v if str(i) == str(j) else FockVector()
    return CCRReport(int(i), int(j), lhs, rhs)


def _step(u: Scalar, v: FockVector) -> FockVector:
    # (u A_0^dag + (1-u) A_1^dag) v
    return create(0, v).scaled(u) + create(1, v).scaled(ONE - u)


def coherent_components(seq: CoeffSeq, n: int) -> Iterator[FockVector]:
    """Yield ``X^0 = vacuum, X^1, ..., X^n`` of the coherent state of ``seq``."""
    x = VACUUM
    yield x
    for k in range(n):
        x = _step(seq.at(k), x)
        yield x


def coherent_component(seq: CoeffSeq, k: int) -> FockVector:
    if k < 0:
        raise ValueError("grade must be non-negative")
    for x in coherent_components(seq, k):
        pass
    return x


def coherent_truncated(seq: CoeffSeq, lam, n: int) -> FockVector:
    """``sum_{k<=n} lam^k X^k``."""
    if n < 0:
        raise ValueError("truncation order must be non-negative")
    lam = as_scalar(lam)
    total, power = FockVector(), ONE
    for x in coherent_components(seq, n):
        total = total + x.scaled(power)
        power = power * lam
    return total
