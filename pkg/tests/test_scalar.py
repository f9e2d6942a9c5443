from fractions import Fraction

import pytest
from hypothesis import given

from freecoh.scalar import HALF, ONE, ZERO, ParseError, Scalar, as_scalar
from oracles import scalars


@pytest.mark.parametrize(
    "text, re, im",
    [
        ("1/2", Fraction(1, 2), 0),
        ("-3", -3, 0),
        ("2/4", Fraction(1, 2), 0),
        ("1/2+3/4*i", Fraction(1, 2), Fraction(3, 4)),
        ("1/2-i", Fraction(1, 2), -1),
        ("i", 0, 1),
        ("-2/3*i", 0, Fraction(-2, 3)),
        (" 1/3 - 2/5*i ", Fraction(1, 3), Fraction(-2, 5)),
    ],
)
def test_parse(text, re, im):
    s = Scalar.parse(text)
    assert (s.re, s.im) == (re, im)


@pytest.mark.parametrize("text", ["", "x", "1/0", "1/2+*i", "2i+1", "1//2"])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        Scalar.parse(text)


def test_format():
    assert str(Scalar(Fraction(3, 6))) == "1/2"
    assert str(Scalar(1, -1)) == "1-1*i"
    assert str(Scalar(0, Fraction(2, 3))) == "0+2/3*i"


@given(scalars(), scalars())
def test_field_laws(a, b):
    assert a + b == b + a
    assert a * b == b * a
    assert (a - b) + b == a
    if b:
        assert (a / b) * b == a
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a * a.conj()).is_real()
    assert (a * a.conj()).re == a.abs2()


@given(scalars())
def test_roundtrip_and_canonical(a):
    assert Scalar.parse(str(a)) == a
    assert Scalar(a.re, a.im) == a
    assert a.re.denominator > 0


def test_interop_with_numbers():
    assert Scalar(3) == 3
    assert HALF == Fraction(1, 2)
    assert hash(HALF) == hash(Fraction(1, 2))
    assert 1 - HALF == HALF
    assert as_scalar("2") * ONE == 2
    assert not ZERO
    assert Scalar(2) ** -2 == Fraction(1, 4)
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO
