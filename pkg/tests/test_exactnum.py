from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wzkit.exactnum import (UnsupportedArgumentError, binomial, rat_arith,
                            rational)

rationals = st.fractions(
    min_value=-50, max_value=50, max_denominator=40).map(Fraction)


def test_rat_arith_examples():
    assert rat_arith(Fraction(1, 3), "+", Fraction(4, 3)) == Fraction(5, 3)
    assert rat_arith(Fraction(2, 4), "*", Fraction(1)) == Fraction(1, 2)
    v = Fraction(-12, 35)
    assert rat_arith(v, "-", v) == Fraction(0, 1)


def test_rat_arith_is_canonical():
    out = rat_arith(Fraction(2, 4), "+", Fraction(3, 6))
    assert (out.numerator, out.denominator) == (1, 1)
    # same results regardless of operand representation
    assert rat_arith(Fraction(2, 4), "+", Fraction(1, 3)) == \
        rat_arith(Fraction(1, 2), "+", Fraction(2, 6))


def test_rat_arith_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        rat_arith(Fraction(1), "/", Fraction(0))


def test_rat_arith_unicode_operators():
    assert rat_arith(Fraction(1), "−", Fraction(2)) == -1
    assert rat_arith(Fraction(3), "×", Fraction(2)) == 6
    assert rat_arith(Fraction(3), "÷", Fraction(2)) == Fraction(3, 2)


def test_rational_constructor():
    assert rational(6, 4) == Fraction(3, 2)
    assert rational(0, 7) == Fraction(0, 1)


def test_binomial_examples():
    assert binomial(5, 2) == 10
    assert binomial(3, 5) == 0  # out-of-range convention
    assert binomial(0, 0) == 1  # used at the degenerate base case
    assert binomial(4, -1) == 0


def test_binomial_negative_top_rejected():
    with pytest.raises(UnsupportedArgumentError):
        binomial(-1, 0)
    with pytest.raises(UnsupportedArgumentError):
        binomial(-3, -5)


def test_binomial_row_sums():
    for a in range(0, 21):
        assert sum(binomial(a, b) for b in range(0, a + 1)) == 2**a


def test_binomial_pascal_rule():
    for a in range(1, 21):
        for b in range(-3, a + 4):
            assert binomial(a, b) == binomial(a - 1, b - 1) + binomial(a - 1, b)


@given(rationals, rationals, rationals)
def test_rat_arith_ring_laws(a, b, c):
    assert rat_arith(a, "+", b) == rat_arith(b, "+", a)
    left = rat_arith(rat_arith(a, "+", b), "*", c)
    right = rat_arith(rat_arith(a, "*", c), "+", rat_arith(b, "*", c))
    assert left == right


@given(rationals, rationals)
def test_rat_arith_sub_div_consistency(a, b):
    assert rat_arith(rat_arith(a, "-", b), "+", b) == a
    if b != 0:
        assert rat_arith(rat_arith(a, "/", b), "*", b) == a
