from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from ku_stab.chern import INF, ChernY, TwistedClass, discriminant_twisted, slope_h
from ku_stab.exact import GaussRat, InputError
from ku_stab.tilt import (
    BETA_KU,
    MukaiVector,
    TiltParams,
    exceptional_class,
    exceptional_table,
    independence_determinant,
    ku_charge,
    ku_charge_formula,
    ku_charge_pipeline,
    parallel_coefficients,
    psi_class,
    tilt_slope,
    verify_heart_window,
    wall_scan,
    z_first,
    z_second,
)
from strategies import chern_y, rats

P = TiltParams(F(1, 32), BETA_KU)
pos_rats = st.fractions(min_value=F(1, 64), max_value=10, max_denominator=64)


def twisted(t):
    return TwistedClass(*t[:3])


def test_params_require_positive_alpha():
    with pytest.raises(InputError):
        TiltParams(0, -1)
    with pytest.raises(InputError):
        TiltParams("-1/4", -1)


def test_z_on_cl0():
    # hand value: beta-twisted class (8, -8 + 10, 4 - 10 + 25/4) = (8, 2, 1/4)
    z = z_first(P, exceptional_class("Cl0"))
    assert z == GaussRat(F(1, 8) - F(1, 4), 2)
    assert z.im > 0


def test_z_rank_zero_point_like():
    # ch2 = -h^2, so h.ch2 = -2 and Z = 2 for every (alpha, beta)
    v = TwistedClass(0, 0, -2)
    for p in (P, TiltParams(3, 7), TiltParams(F(1, 9), F(-2, 3))):
        assert z_first(p, v) == GaussRat(2, 0)


@given(chern_y(with_ch3=False), rats, pos_rats, rats)
def test_z_linear(t, s, a2, b):
    p = TiltParams(a2, b)
    v = twisted(t)
    assert z_first(p, v.scale(s)) == z_first(p, v) * GaussRat(s, 0)
    w = TwistedClass(1, 2, 3)
    assert z_first(p, v + w) == z_first(p, v) + z_first(p, w)
    assert z_second(p, v + w) == z_second(p, v) + z_second(p, w)


@given(chern_y(with_ch3=False), pos_rats, rats)
def test_z_second_rotation(t, a2, b):
    p = TiltParams(a2, b)
    z, z0 = z_first(p, twisted(t)), z_second(p, twisted(t))
    assert z0.re == z.im and z0.im == -z.re


def test_slope_infinite_when_im_zero():
    assert tilt_slope(P, TwistedClass(0, 0, -2)) is INF


def test_table_matches():
    t = {e.name: e.truncated for e in exceptional_table()}
    assert t["Cl0"] == (4, -4, 2)
    assert t["Rb*Cl1(-h)"] == (4, -6, F(9, 2))
    assert len(t) == 8
    for e in exceptional_table():
        assert discriminant_twisted(e.twisted_ch) == 0
        assert e.twisted_ch == TwistedClass(*(2 * x for x in e.truncated))


def test_mu_h_chain():
    mu = {e.name: slope_h(e.twisted_ch) for e in exceptional_table()}
    assert mu["Cl1(-h)"] == mu["Cl0(-h)"] == -2
    assert mu["Ra*Cl1(-h)"] == mu["Rb*Cl1(-h)"] == F(-3, 2)
    assert mu["Cl0"] == mu["Cl1"] == -1
    assert mu["Ra"] == mu["Rb"] == F(-1, 2)


def test_window_orderings_by_hand():
    # mu(Cl0) = (1/4 - 4 a^2)/2 and mu(Ra) = (9/4 - 4 a^2)/6 at beta = -5/4
    a2 = F(1, 32)
    assert tilt_slope(P, exceptional_class("Cl0")) == (F(1, 4) - 4 * a2) / 2
    assert tilt_slope(P, exceptional_class("Ra")) == (F(9, 4) - 4 * a2) / 6
    s_cl0 = tilt_slope(P, -exceptional_class("Cl1(-h)"))
    s_ra = tilt_slope(P, -exceptional_class("Ra*Cl1(-h)"))
    assert s_cl0 < s_ra < 0


@pytest.mark.parametrize("a2", [F(1, 64), F(1, 32), F(1, 20), F(15, 256)])
def test_heart_window_passes(a2):
    rep = verify_heart_window(TiltParams(a2, BETA_KU))
    assert rep.passed, rep.failures()


def test_heart_window_fails_outside():
    rep = verify_heart_window(TiltParams(1, BETA_KU))
    assert not rep.passed
    assert any("0 < mu(Cl0)" == c.name for c in rep.failures())


def test_heart_window_beta_minus_one():
    rep = verify_heart_window(TiltParams(F(1, 32), -1))
    names = {c.name for c in rep.failures()}
    assert "Cl0 in Coh^beta (mu_h > beta)" in names
    assert "beta in [-3/2, -1): no" in rep.notes


@given(st.fractions(min_value=F(1, 10 ** 4), max_value=F(1, 16), max_denominator=10 ** 4)
       .filter(lambda x: 0 < x < F(1, 16)))
def test_heart_window_whole_alpha_window(a2):
    assert verify_heart_window(TiltParams(a2, BETA_KU)).passed


def test_ku_charge_values():
    assert ku_charge(0, MukaiVector(1, 0)) == GaussRat(24, F(119, 6))
    assert ku_charge(F(1, 32), MukaiVector(0, 1)) == GaussRat(-28, F(-247, 12))
    assert ku_charge(F(1, 32), MukaiVector(0, 0)) == GaussRat(0, 0)
    with pytest.raises(InputError):
        ku_charge(-1, MukaiVector(1, 0))


def test_psi_characters_need_the_twist():
    # read as already-twisted characters the charges come out wrong
    from ku_stab.tilt import PSI_LAMBDA1, z_charge
    literal = TwistedClass.from_twisted(PSI_LAMBDA1)
    z_lit = GaussRat(0, -1) * z_charge(0, BETA_KU, literal)
    assert z_lit.im == F(131, 6)
    assert psi_class(1).v2 == 2 * (F(13, 6) - 1)


@given(pos_rats, st.integers(-9, 9), st.integers(-9, 9))
def test_ku_charge_two_paths(a2, a, b):
    v = MukaiVector(a, b)
    assert ku_charge_formula(a2, v) == ku_charge_pipeline(a2, v)


@pytest.mark.parametrize("a2", [F(1, 64), F(1, 32), F(1, 20)])
def test_independence(a2):
    assert independence_determinant(a2) != 0


def test_wall_examples():
    sols = {(s.destabilizer.a, s.destabilizer.b): s for s in wall_scan(MukaiVector(1, 0), 2)}
    assert sols[(0, 1)].alpha_sq_root == F(83, 48)
    assert not sols[(0, 1)].in_window
    assert (2, 0) not in sols and (0, 0) not in sols
    with pytest.raises(InputError):
        wall_scan(MukaiVector(2, 2), 3)


def test_wall_roots_resubstitute():
    v = MukaiVector(1, 1)
    sols = wall_scan(v, 3)
    roots = [s.alpha_sq_root for s in sols]
    assert roots == sorted(roots, key=lambda r: (r is None, r or 0))
    for s in sols:
        assert s.alpha_sq_root is not None
        zv = ku_charge_formula(s.alpha_sq_root, v)
        zw = ku_charge_formula(s.alpha_sq_root, s.destabilizer)
        assert (zw.conjugate() * zv).im == 0


def test_wall_scan_deterministic():
    assert wall_scan(MukaiVector(2, 3), 4) == wall_scan(MukaiVector(2, 3), 4)


@given(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5))
def test_parallel_coefficients_linear_in_alpha(a, b, c, d):
    v, w = MukaiVector(a, b), MukaiVector(c, d)
    c0, c1 = parallel_coefficients(v, w)
    for a2 in (F(1, 7), F(5, 3)):
        zv, zw = ku_charge_formula(a2, v), ku_charge_formula(a2, w)
        assert (zw.conjugate() * zv).im == c0 + c1 * a2
