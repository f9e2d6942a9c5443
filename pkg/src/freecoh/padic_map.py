"""The map from coherent states to functions / distributions on Z_2, and its verifiers.

Each ``verify_*`` returns a :class:`VerificationReport` carrying both sides
of an identity, computed along independent routes.  ``sweep_*`` generators
run a verifier over a deterministic parameter family.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from . import fock
from .coherent import (
    CoeffSeq,
    pairing_series,
    random_scalar,
    random_seq,
    renorm_pairing,
    rho_distance_sq,
)
from .dyadic import (
    Delta,
    Disc,
    DyadicPoint,
    Induced,
    LocallyConstantFn,
    PadicDistribution,
    apply_distribution,
    cell_state,
    haar_measure,
    indicator,
    integrate,
    l2_pairing,
    pointwise_mul,
    scale,
    val2_diff,
)
from .scalar import HALF, ONE, ZERO, Scalar, as_scalar

CLAIMS = ("lemma1", "lemma2", "lemma3", "proposition", "theorem")
PROPOSITION_POINTS = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))


def branch_weights(w: CoeffSeq) -> list[Scalar]:
    """Weights of the binary branches of a truncated state at its own level.

    Expanding the recursion multilinearly, ``X_W = sum_b weight[b] X_{B(b)}``
    where ``B(b)`` has the digits of ``b`` as prefix and tail 1/2.  Digit 1
    picks up ``w_j`` (the ``A_0^dagger`` coefficient), digit 0 picks ``1 - w_j``.
    """
    if not w.is_truncated():
        raise ValueError(f"{w} does not have tail 1/2")
    k = len(w)
    out = []
    for b in range(1 << k):
        p = ONE
        for j in range(k):
            wj = w.prefix[j]
            p = p * (wj if (b >> j) & 1 else ONE - wj)
        out.append(p)
    return out


def phi_state(w: CoeffSeq) -> LocallyConstantFn:
    """Image of a truncated state: ``2^k sum_b weight[b] theta_k(x - b)``."""
    k = len(w)
    return scale(Scalar(1 << k), LocallyConstantFn(k, branch_weights(w)))


def phi_functional(u: CoeffSeq) -> PadicDistribution:
    if u.is_binary():
        return Delta(DyadicPoint.from_seq(u))
    return Induced(u)


def normalized_indicator(d: Disc) -> LocallyConstantFn:
    return scale(ONE / haar_measure(d), indicator(d))


@dataclass(frozen=True)
class VerificationReport:
    claim: str
    params: dict
    lhs: object
    rhs: object
    equal: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "equal", self.lhs == self.rhs)

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "params": self.params,
            "lhs": _jsonable(self.lhs),
            "rhs": _jsonable(self.rhs),
            "equal": self.equal,
        }


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, (bool, int)):
        return x
    return str(x)


def verify_lemma1(k: int, l: int, u_bits: str, v_bits: str) -> VerificationReport:
    """Renormalized pairing of ``U_k, V_l`` against the normalized Haar integral of ``theta_k theta_l``."""
    if len(u_bits) != k or len(v_bits) != l:
        raise ValueError("bit prefixes must have lengths k and l")
    lhs = renorm_pairing(CoeffSeq.truncated(CoeffSeq.binary(u_bits).prefix),
                         CoeffSeq.truncated(CoeffSeq.binary(v_bits).prefix))
    du, dv = Disc.from_bits(u_bits), Disc.from_bits(v_bits)
    rhs = integrate(pointwise_mul(indicator(du), indicator(dv))) / (haar_measure(du) * haar_measure(dv))
    return VerificationReport("lemma1", {"k": k, "l": l, "u": u_bits, "v": v_bits}, lhs, rhs)


def verify_lemma2(u: CoeffSeq, v_bits: str, j: int) -> VerificationReport:
    """Binary ``X_U`` acts on ``X_{V_j}`` as ``delta(x - U)`` on ``theta_j(x - V) / mu``.

    Both the pairing and the induced functional are compared with the delta action.
    """
    if not u.is_binary():
        raise ValueError("lemma 2 concerns binary sequences")
    if len(v_bits) != j:
        raise ValueError("v_bits must have length j")
    v = CoeffSeq.truncated(CoeffSeq.binary(v_bits).prefix)
    test = normalized_indicator(Disc.from_bits(v_bits))
    delta = apply_distribution(Delta(DyadicPoint.from_seq(u)), test)
    lhs = [renorm_pairing(u, v), apply_distribution(Induced(u), test)]
    return VerificationReport("lemma2", {"u": str(u), "v": v_bits, "j": j}, lhs, [delta, delta])


def verify_lemma3(u: CoeffSeq, w: CoeffSeq, i_max: int) -> VerificationReport:
    """Grade inner products past the truncation point halve at every step.

    The grade inner products come from the Fock oracle; the final entry
    compares the closed-form tail ratio with 1/2.
    """
    if not w.is_truncated():
        raise ValueError(f"{w} does not have tail 1/2")
    k = len(w)
    n = k + i_max
    grades = [fock.inner(x, y) for x, y in zip(fock.coherent_components(u, n),
                                                 fock.coherent_components(w, n))]
    s = pairing_series(u, w)
    lhs = [grades[k + i] for i in range(1, i_max + 1)]
    rhs = [grades[k + i - 1] * HALF for i in range(1, i_max + 1)]
    lhs += [s.coefficient(k + i) for i in range(i_max + 1)] + [s.ratio]
    rhs += [s.coefficient(k) * HALF ** i for i in range(i_max + 1)] + [HALF]
    return VerificationReport("lemma3", {"u": str(u), "w": str(w), "k": k, "i_max": i_max}, lhs, rhs)


def verify_proposition(u: CoeffSeq, v: CoeffSeq, t) -> VerificationReport:
    """``rho^2 (1 - t) / 2`` against ``t`` to the power ``v_2(U - V) + 1``."""
    t = as_scalar(t)
    lhs = rho_distance_sq(u, v, t) * (ONE - t) / 2
    val = val2_diff(DyadicPoint.from_seq(u), DyadicPoint.from_seq(v))
    rhs = ZERO if val is None else t ** (val + 1)
    return VerificationReport("proposition", {"u": str(u), "v": str(v), "t": str(t)}, lhs, rhs)


def verify_ultrametric(family: Sequence[CoeffSeq], t) -> VerificationReport:
    """Strong triangle inequality for ``rho^2`` on every ordered triple of ``family``."""
    t = as_scalar(t)
    n = len(family)
    d = [[rho_distance_sq(a, b, t).re for b in family] for a in family]
    ok = sum(
        1
        for i, j, k in itertools.product(range(n), repeat=3)
        if d[i][j] <= max(d[i][k], d[j][k])
    )
    return VerificationReport("ultrametric", {"family_size": n, "t": str(t)}, ok, n ** 3)


def verify_theorem(u: CoeffSeq, v: CoeffSeq) -> VerificationReport:
    """``L2(phi(U), phi(V))`` against the renormalized Fock pairing."""
    lhs = l2_pairing(phi_state(u), phi_state(v))
    rhs = renorm_pairing(u, v)
    return VerificationReport("theorem", {"u": str(u), "v": str(v)}, lhs, rhs)


def _bit_strings(n: int) -> Iterator[str]:
    for b in range(1 << n):
        yield "".join(str((b >> i) & 1) for i in range(n))


def _random_bits(rng: random.Random, n: int) -> str:
    return "".join(rng.choice("01") for _ in range(n))


EXHAUSTIVE_LEVEL = 5
SAMPLES_ABOVE = 32


def sweep_lemma1(max_level: int, rng: random.Random) -> Iterator[VerificationReport]:
    for k, l in itertools.product(range(max_level + 1), repeat=2):
        if max(k, l) <= EXHAUSTIVE_LEVEL:
            pairs: Iterable = itertools.product(_bit_strings(k), _bit_strings(l))
        else:
            pairs = []
            for _ in range(SAMPLES_ABOVE):
                a = _random_bits(rng, k)
                # half the samples nest, half are arbitrary
                b = a[:l] + _random_bits(rng, l - min(k, l)) if rng.random() < 0.5 else _random_bits(rng, l)
                pairs.append((a, b))
        for a, b in pairs:
            yield verify_lemma1(k, l, a, b)


def binary_family(max_prefix: int) -> list[CoeffSeq]:
    """All binary sequences with prefix length <= ``max_prefix`` and either tail."""
    return [
        CoeffSeq.binary(bits, tail)
        for n in range(max_prefix + 1)
        for bits in _bit_strings(n)
        for tail in (0, 1)
    ]


def sweep_lemma2(max_level: int, rng: random.Random) -> Iterator[VerificationReport]:
    top = min(max_level, 6)
    for u in binary_family(top):
        for j in range(top + 1):
            for v in _bit_strings(j):
                yield verify_lemma2(u, v, j)
    for j in range(top + 1, max_level + 1):
        for _ in range(SAMPLES_ABOVE):
            u = CoeffSeq.binary(_random_bits(rng, rng.randint(0, max_level + 2)), rng.randint(0, 1))
            yield verify_lemma2(u, _random_bits(rng, j), j)


def random_truncated(rng: random.Random, k: int, binary_share: float = 0.0) -> CoeffSeq:
    if rng.random() < binary_share:
        return CoeffSeq.truncated(CoeffSeq.binary(_random_bits(rng, k)).prefix)
    return CoeffSeq.truncated([random_scalar(rng) for _ in range(k)])


def sweep_lemma3(max_level: int, rng: random.Random, count: int = 50, i_max: int = 8) -> Iterator[VerificationReport]:
    top = min(max_level, 5)
    for n in range(count):
        u = random_seq(rng, max_prefix=6)
        yield verify_lemma3(u, random_truncated(rng, n % (top + 1)), i_max)
    for k in range(top + 1):
        u = CoeffSeq.binary(_random_bits(rng, 6), rng.randint(0, 1))
        yield verify_lemma3(u, random_truncated(rng, k), i_max)


def ultrametric_family(rng: random.Random, size: int = 40, max_prefix: int = 6) -> list[CoeffSeq]:
    seen: dict[tuple, CoeffSeq] = {}
    while len(seen) < size:
        s = CoeffSeq.binary(_random_bits(rng, rng.randint(0, max_prefix)), rng.randint(0, 1))
        p = DyadicPoint.from_seq(s)
        key = tuple(p.digit(i) for i in range(max_prefix + 1))
        seen.setdefault(key, s)
    return list(seen.values())


def sweep_proposition(max_level: int, rng: random.Random) -> Iterator[VerificationReport]:
    top = min(max_level, 6)
    family = [CoeffSeq.binary(bits, 0) for n in range(top + 1) for bits in _bit_strings(n)]
    for u, v in itertools.product(family, repeat=2):
        for t in PROPOSITION_POINTS:
            yield verify_proposition(u, v, t)
    triples = ultrametric_family(rng)
    for t in PROPOSITION_POINTS:
        yield verify_ultrametric(triples, t)


def sweep_theorem(max_level: int, rng: random.Random, count: int = 200) -> Iterator[VerificationReport]:
    top = min(max_level, 6)
    for _ in range(count):
        u = random_truncated(rng, rng.randint(0, top), binary_share=0.25)
        v = random_truncated(rng, rng.randint(0, top), binary_share=0.25)
        yield verify_theorem(u, v)
    small = min(max_level, 3)
    cells = [CoeffSeq.truncated(CoeffSeq.binary(b).prefix) for n in range(small + 1) for b in _bit_strings(n)]
    for u, v in itertools.product(cells, repeat=2):
        yield verify_theorem(u, v)


SWEEPS: dict[str, Callable[[int, random.Random], Iterator[VerificationReport]]] = {
    "lemma1": sweep_lemma1,
    "lemma2": sweep_lemma2,
    "lemma3": sweep_lemma3,
    "proposition": sweep_proposition,
    "theorem": sweep_theorem,
}


def run_claims(claims: Iterable[str], max_level: int = 8, seed: int = 0) -> list[VerificationReport]:
    """Run the named sweeps in order; each claim gets its own generator seeded from ``seed``."""
    reports: list[VerificationReport] = []
    for claim in claims:
        if claim not in SWEEPS:
            raise KeyError(f"unknown claim {claim!r}")
        rng = random.Random(f"{seed}:{claim}")
        reports.extend(SWEEPS[claim](max_level, rng))
    return reports
