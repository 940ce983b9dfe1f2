from fractions import Fraction as F

import pytest
from hypothesis import given

from ku_stab.chern import (
    INF,
    ChernSigma,
    ChernY,
    TwistedClass,
    beta_twist,
    chern_from_json,
    discriminant_sigma,
    discriminant_twisted,
    discriminant_y,
    line_bundle_sigma,
    restrict_to_sigma,
    slope_h,
    twist_cl0,
    untwist_cl0,
)
from ku_stab.exact import InputError
from ku_stab.sigma import cl0_character, euler_pairing_sigma
from strategies import chern_y, rats, sigma_classes


def test_twist_structure_sheaf():
    assert twist_cl0(ChernY(1, 0, 0, 0)) == ChernY(1, 0, F(-1, 8), 0)


def test_untwist_cl0_character():
    e = untwist_cl0(ChernY(4, -4, 2, None))
    assert e.ch2 == F(5, 2)
    assert e.ch3 is None


@given(chern_y())
def test_twist_untwist_inverse(t):
    e = ChernY(*t)
    assert untwist_cl0(twist_cl0(e)) == e
    assert twist_cl0(untwist_cl0(e)) == e


def test_beta_twist_examples():
    e = ChernY(1, 0, 0, 0)
    assert beta_twist(e, 0) == e
    assert beta_twist(e, 1) == ChernY(1, -1, F(1, 2), F(-1, 6))


@given(chern_y(), rats)
def test_beta_twist_ch1(t, b):
    e = ChernY(*t)
    assert beta_twist(e, b).ch1 == e.ch1 - b * e.ch0


@given(chern_y(), rats, rats)
def test_beta_twist_composes(t, b1, b2):
    e = ChernY(*t)
    assert beta_twist(beta_twist(e, b1), b2) == beta_twist(e, b1 + b2)


@given(chern_y(with_ch3=False), rats)
def test_beta_twist_matches_on_twisted_classes(t, b):
    e = ChernY(*t)
    assert TwistedClass.from_twisted(beta_twist(e, b)) == beta_twist(TwistedClass.from_twisted(e), b)


@pytest.mark.parametrize("twisted,expected", [
    (ChernY(4, -4, 2, None), 0),
    (ChernY(4, -2, F(1, 2), None), 0),
])
def test_discriminant_vanishes_on_exceptional(twisted, expected):
    e = untwist_cl0(twisted)
    assert discriminant_y(e, "raw") == expected
    assert discriminant_y(e, "twisted") == expected
    assert discriminant_twisted(TwistedClass.from_twisted(twisted)) == expected


def test_discriminant_rank_zero():
    assert discriminant_y(ChernY(0, 1, 0, 0)) == 2


def test_discriminant_bad_form():
    with pytest.raises(InputError):
        discriminant_y(ChernY(1, 0, 0, 0), "other")


@given(chern_y())
def test_discriminant_forms_agree(t):
    e = ChernY(*t)
    assert discriminant_y(e, "raw") == discriminant_y(e, "twisted")
    assert discriminant_y(e) == discriminant_twisted(TwistedClass.from_character(e))


@given(chern_y(), rats)
def test_discriminant_beta_invariant(t, b):
    e = ChernY(*t)
    v = TwistedClass.from_character(e)
    assert discriminant_twisted(beta_twist(v, b)) == discriminant_twisted(v)


@given(chern_y(with_ch3=False), chern_y(with_ch3=False))
def test_discriminant_parallelogram(x, y):
    a, b = TwistedClass(*x[:3]), TwistedClass(*y[:3])
    d = discriminant_twisted
    assert d(a + b) + d(a - b) == 2 * d(a) + 2 * d(b)


@given(chern_y(), rats)
def test_slope_shift(t, b):
    e = ChernY(*t)
    if e.ch0 == 0:
        assert slope_h(e) is INF
    else:
        assert slope_h(beta_twist(e, b)) == slope_h(e) - b


@given(chern_y())
def test_slope_twist_invariant(t):
    e = ChernY(*t)
    assert slope_h(e) == slope_h(twist_cl0(e)) == slope_h(TwistedClass.from_character(e))


def test_slopes_of_table_classes():
    assert slope_h(ChernY(4, -4, 2, None)) == -1
    assert slope_h(ChernY(4, -8, 8, None)) == -2
    assert slope_h(ChernY(0, 1, 0, 0)) is INF
    assert INF > 10 ** 9 and not INF < 0


def test_restriction():
    assert restrict_to_sigma(ChernY(1, 0, 0, 0)) == ChernSigma(1, 0, 0, 0)
    assert restrict_to_sigma(ChernY(0, 1, 3, None)) == ChernSigma(0, 1, 1, 6)


def test_restricted_cl0_matches_line_bundle_sum():
    # untwisted ch(Cl0) on the threefold, restricted, against the four summands
    e = untwist_cl0(ChernY(4, -4, 2, None))
    r = restrict_to_sigma(e)
    direct = cl0_character()
    assert (r.rk, r.b1, r.b2) == (direct.rk, direct.b1, direct.b2)
    assert direct == ChernSigma(4, -4, -4, 5)
    assert r.c == 5


def test_discriminant_sigma_examples():
    assert discriminant_sigma(ChernSigma(0, 1, 1, 0)) == 2
    e = restrict_to_sigma(untwist_cl0(ChernY(4, -4, 2, None)))
    assert discriminant_sigma(e) >= 0


@given(sigma_classes())
def test_surface_identity(t):
    e = ChernSigma(*t)
    assert discriminant_sigma(e) / 4 == e.rk ** 2 / 16 - euler_pairing_sigma(e, e)


@given(sigma_classes(), sigma_classes())
def test_sigma_multiplication_commutes(a, b):
    x, y = ChernSigma(*a), ChernSigma(*b)
    assert x * y == y * x
    assert x.dual().dual() == x


def test_line_bundle_sigma_multiplicative():
    assert line_bundle_sigma(1, 2) * line_bundle_sigma(-3, 1) == line_bundle_sigma(-2, 3)


def test_json():
    doc = {"basis": "Y", "ch0": "8", "ch1": "2", "ch2": "13/6", "ch3": None}
    e = chern_from_json(doc)
    assert e.ch2 == F(13, 6) and e.ch3 is None
    assert e.to_json() == doc
    s = chern_from_json({"basis": "Sigma", "rk": 4, "b1": "-4", "b2": "-4", "c": "5"})
    assert s == ChernSigma(4, -4, -4, 5)
    with pytest.raises(InputError):
        chern_from_json({"basis": "Z"})
    with pytest.raises(InputError):
        chern_from_json({"basis": "Y", "ch0": 1})


def test_degree_requires_ch3():
    with pytest.raises(InputError):
        ChernY(1, 0, 0, None).degree()
    assert ChernY(1, 0, 0, F(1, 2)).degree() == 1
