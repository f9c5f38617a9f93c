from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bruhat.domain import ZZ, Frac, OpCounter, Ring, add, exact_div, frac_normalize, mul
from bruhat.errors import DivisionByZero, InexactDivision

ints = st.integers(min_value=-(10**30), max_value=10**30)


def test_add_examples():
    assert add(2, 3) == 5
    assert add(7, 0) == 7
    assert add(10**40, 10**40) == 2 * 10**40


def test_mul_counts():
    c = OpCounter()
    assert mul(-4, 5, c) == -20
    assert c.mul_count == 1
    assert mul(9, 1) == 9


def test_exact_div():
    c = OpCounter()
    assert exact_div(84, 21, c) == 4
    assert c.div_count == 1
    assert exact_div(0, -5) == 0
    with pytest.raises(InexactDivision) as exc:
        exact_div(7, 2)
    assert (exc.value.dividend, exc.value.divisor) == (7, 2)
    with pytest.raises(DivisionByZero):
        exact_div(3, 0)


def test_frac_normalize():
    assert frac_normalize(6, -4) == Fraction(-3, 2)
    f = frac_normalize(0, 5)
    assert (f.numerator, f.denominator) == (0, 1)
    assert frac_normalize(21, 7) == Fraction(3, 1)
    with pytest.raises(DivisionByZero):
        frac_normalize(1, 0)


@given(ints, ints, ints)
def test_ring_axioms(a, b, c):
    assert add(a, add(b, c)) == add(add(a, b), c)
    assert mul(a, mul(b, c)) == mul(mul(a, b), c)
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
    assert mul(a, b) == mul(b, a)


@given(ints, ints.filter(lambda x: x != 0))
def test_exact_div_inverts_mul(a, b):
    assert exact_div(mul(a, b), b) == a


@given(ints, ints.filter(lambda x: x != 0))
def test_integrality(a, b):
    f = ZZ.frac(a, b)
    assert ZZ.is_integral(f) == (a % b == 0)
    if a % b == 0:
        assert ZZ.to_ring(f) == a // b


class NoGcdIntegers(Ring):
    """Integers pretending to have no gcd, to exercise unreduced fractions."""

    def divmod_exact(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise InexactDivision(a, b)
        return q


def test_generic_fraction_without_gcd():
    R = NoGcdIntegers()
    x = R.frac(2, 4)
    assert (x.num, x.den) == (2, 4)
    assert x == R.frac(1, 2)
    assert x + R.frac(1, 2) == R.frac(1, 1)
    assert x * 4 == 2
    assert (1 / x) == R.frac(2, 1)
    assert R.is_integral(R.frac(6, 3))
    assert not R.is_integral(R.frac(3, 6))
    assert R.to_ring(R.frac(6, -3)) == -2
    with pytest.raises(DivisionByZero):
        R.frac(1, 0)


def test_generic_fraction_reduces_with_gcd():
    x = Frac(6, -4, ZZ)
    assert (x.num, x.den) == (-3, 2)
