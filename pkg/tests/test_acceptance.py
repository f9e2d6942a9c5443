"""Exit criteria for the build, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary.  Every identity is checked with exact rational equality.
"""

import itertools
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_LINES
from freecoh import fock
from freecoh.coherent import (
    CoeffSeq,
    eigen_boundary,
    eigen_residual,
    pairing_series,
    random_scalar,
    random_seq,
    renorm_pairing,
    rho_distance_sq,
)
from freecoh.dyadic import (
    Delta,
    Disc,
    DiscRelation,
    DyadicPoint,
    Induced,
    apply_distribution,
    disc_relation,
    haar_measure,
    indicator,
    integrate,
    l2_pairing,
    pointwise_mul,
    val2_diff,
)
from freecoh.padic_map import (
    PROPOSITION_POINTS,
    binary_family,
    normalized_indicator,
    phi_state,
    random_truncated,
    ultrametric_family,
)
from freecoh.scalar import HALF, ONE, Scalar

SEED = 20261014


class Criterion:
    def __init__(self, label, budget):
        self.label, self.budget = label, budget

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        ok = exc_type is None and elapsed < self.budget
        ACCEPTANCE_LINES.append(
            f"{'PASS' if ok else 'FAIL'}  {self.label}  ({elapsed:.2f}s, budget {self.budget}s)"
        )
        if exc_type is None:
            assert elapsed < self.budget, f"{self.label}: {elapsed:.2f}s exceeds {self.budget}s"
        return False


def bit_strings(n):
    return ["".join(b) for b in itertools.product("01", repeat=n)]


def truncated_from_bits(bits):
    return CoeffSeq.truncated(CoeffSeq.binary(bits).prefix)


def test_1_lemma1_exhaustive():
    with Criterion("1 Lemma 1: renormalized pairing = normalized Haar integral, k,l <= 5 exhaustive", 10):
        count = 0
        for k, l in itertools.product(range(6), repeat=2):
            for ub, vb in itertools.product(bit_strings(k), bit_strings(l)):
                du, dv = Disc.from_bits(ub), Disc.from_bits(vb)
                haar = integrate(pointwise_mul(indicator(du), indicator(dv))) / (haar_measure(du) * haar_measure(dv))
                value = renorm_pairing(truncated_from_bits(ub), truncated_from_bits(vb))
                expected = 0 if disc_relation(du, dv) is DiscRelation.DISJOINT else min(2**k, 2**l)
                assert value == haar == expected, (ub, vb)
                count += 1
        assert count == 63 * 63


def test_2_oracle_equivalence():
    rng = random.Random(SEED)
    with Criterion("2 closed-form coefficients = Fock oracle grade inner products, 200 pairs, k <= 10", 30):
        for _ in range(200):
            u, v = random_seq(rng, max_prefix=6), random_seq(rng, max_prefix=6)
            s = pairing_series(u, v)
            for k, (xu, xv) in enumerate(zip(fock.coherent_components(u, 10), fock.coherent_components(v, 10))):
                assert s.coefficient(k) == fock.inner(xu, xv), (u, v, k)


def _tail0_family():
    return [CoeffSeq.binary(b, 0) for n in range(7) for b in bit_strings(n)]


def test_3_proposition_isometry_and_ultrametric():
    with Criterion("3 isometry rho^2 (1-t)/2 = t^(v2(U-V)+1) and strong triangle on 40 sequences", 10):
        family = _tail0_family()
        for t in PROPOSITION_POINTS:
            ts = Scalar(t)
            for u, v in itertools.product(family, repeat=2):
                val = val2_diff(DyadicPoint.from_seq(u), DyadicPoint.from_seq(v))
                lhs = rho_distance_sq(u, v, ts) * (ONE - ts) / 2
                assert lhs == (0 if val is None else ts ** (val + 1)), (u, v, t)
        triples = ultrametric_family(random.Random(SEED), 40)
        assert len(triples) == 40
        for t in PROPOSITION_POINTS:
            d = [[rho_distance_sq(a, b, t).re for b in triples] for a in triples]
            for i, j, k in itertools.product(range(40), repeat=3):
                assert d[i][j] <= max(d[i][k], d[j][k])


@pytest.mark.xfail(strict=True, reason="exponent t^v2(U-V) is one power short of the Fock distance; see test_3")
def test_3_literal_exponent():
    # With the exponent without +1 the identity already fails at U = 0|0, V = 1|0.
    try:
        family = _tail0_family()
        for t in PROPOSITION_POINTS:
            ts = Scalar(t)
            for u, v in itertools.product(family, repeat=2):
                val = val2_diff(DyadicPoint.from_seq(u), DyadicPoint.from_seq(v))
                lhs = rho_distance_sq(u, v, ts) * (ONE - ts) / 2
                assert lhs == (0 if val is None else ts**val), (str(u), str(v), t)
    except AssertionError:
        ACCEPTANCE_LINES.append("FAIL  3' isometry with exponent t^v2(U-V) (unattainable as written; expected failure)")
        raise
    ACCEPTANCE_LINES.append("PASS  3' isometry with exponent t^v2(U-V)")


def test_4_lemma3_halving():
    rng = random.Random(SEED + 4)
    with Criterion("4 Lemma 3: grade inner products halve for i = 1..8, tail ratio 1/2, 50 random U", 10):
        for n in range(50):
            u = random_seq(rng, max_prefix=6)
            k = n % 6
            w = random_truncated(rng, k)
            grades = [fock.inner(x, y) for x, y in zip(fock.coherent_components(u, k + 8),
                                                         fock.coherent_components(w, k + 8))]
            for i in range(1, 9):
                assert grades[k + i] == grades[k + i - 1] * HALF
            assert pairing_series(u, w).ratio == HALF


def test_5_lemma2_delta_functions():
    with Criterion("5 Lemma 2: Induced(U) = Delta(U) = 2^j [U in D] on indicators up to level 6", 10):
        tests = [(j, Disc(j, b)) for j in range(7) for b in range(1 << j)]
        tests = [(j, disc, normalized_indicator(disc)) for j, disc in tests]
        count = 0
        for u in binary_family(6):
            point = DyadicPoint.from_seq(u)
            induced, delta = Induced(u), Delta(point)
            for j, disc, test in tests:
                expected = 2**j if disc.contains(point) else 0
                assert apply_distribution(induced, test) == expected
                assert apply_distribution(delta, test) == expected
                count += 1
        assert count == 254 * 127


def test_6_theorem_pairing():
    rng = random.Random(SEED + 6)
    with Criterion("6 Theorem: L2(phi(U), phi(V)) = renormalized pairing, 200 truncated pairs", 10):
        nonbinary = 0
        for _ in range(200):
            u = random_truncated(rng, rng.randint(0, 6), binary_share=0.25)
            v = random_truncated(rng, rng.randint(0, 6), binary_share=0.25)
            nonbinary += any(x not in (0, 1) for x in u.prefix + v.prefix)
            assert l2_pairing(phi_state(u), phi_state(v)) == renorm_pairing(u, v), (u, v)
        assert nonbinary > 100


def _random_vector(rng):
    terms = {}
    for _ in range(rng.randint(0, 8)):
        word = "".join(rng.choice("01") for _ in range(rng.randint(0, 6)))
        terms[word] = random_scalar(rng)
    return fock.FockVector(terms)


def test_7_operator_laws():
    rng = random.Random(SEED + 7)
    with Criterion("7 CCR, vacuum law on 100 vectors; eigen residual = boundary term, N <= 8", 5):
        for _ in range(100):
            v = _random_vector(rng)
            for i, j in itertools.product((0, 1), repeat=2):
                rep = fock.check_ccr(i, j, v)
                assert rep.equal
                assert rep.lhs == (v if i == j else fock.FockVector())
        for i in (0, 1):
            assert fock.annihilate(i, fock.VACUUM) == fock.FockVector()
        for n in range(1, 9):
            u = random_seq(rng, max_prefix=4)
            lam = Fraction(rng.randint(1, 9), rng.randint(1, 9))
            assert eigen_residual(u, lam, n) == eigen_boundary(u, lam, n)


def test_8_end_to_end_cli():
    with Criterion("8 `verify --claim all --max-level 5` exits 0", 60):
        proc = subprocess.run(
            [sys.executable, "-m", "freecoh", "verify", "--claim", "all", "--max-level", "5"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0, proc.stdout + proc.stderr
        assert proc.stdout.strip().endswith("all equal")
