from fractions import Fraction

import pytest
from hypothesis import given

from ku_stab.exact import GaussRat, I, InputError, format_rat, perfect_square, rat, rat_arith
from strategies import nonzero_rats, rats


def test_rat_arith_examples():
    assert rat_arith("1/2", "1/3", "add") == Fraction(5, 6)
    assert rat("2/4") == Fraction(1, 2)
    assert rat_arith("119/6", rat_arith(8, "83/48", "mul"), "sub") == 6


def test_division_by_zero_is_input_error():
    with pytest.raises(InputError):
        rat_arith(1, 0, "div")
    with pytest.raises(InputError):
        rat("3/0")


@pytest.mark.parametrize("bad", [0.5, True, "1.5", "x", None])
def test_rat_rejects_inexact(bad):
    with pytest.raises(InputError):
        rat(bad)


def test_format_rat():
    assert format_rat(Fraction(13, 6)) == "13/6"
    assert format_rat(Fraction(-4, 2)) == "-2"


@pytest.mark.parametrize("n,s", [(256, 16), (80, None), (0, 0), (-4, None), (1, 1)])
def test_perfect_square(n, s):
    assert perfect_square(n) == s


@given(rats, rats, rats)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert rat_arith(rat_arith(a, b, "add"), b, "sub") == a


@given(nonzero_rats)
def test_inverse(a):
    assert rat_arith(a, rat_arith(1, a, "div"), "mul") == 1


@given(rats, rats)
def test_lowest_terms(a, b):
    r = rat_arith(a, b, "mul")
    from math import gcd
    assert r.denominator > 0 and gcd(r.numerator, r.denominator) == 1


def test_i_squared():
    assert I * I == GaussRat(-1, 0)


@given(rats, rats, rats, rats)
def test_gauss_conjugate_product(a, b, c, d):
    z, w = GaussRat(a, b), GaussRat(c, d)
    assert (z * w).conjugate() == z.conjugate() * w.conjugate()
    assert (z * z.conjugate()).im == 0
