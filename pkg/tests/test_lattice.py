import math
from itertools import product

import numpy as np
import pytest
import sympy
from hypothesis import assume, given, strategies as st
from sympy.matrices.normalforms import smith_normal_form

from ku_stab.exact import InputError
from ku_stab.lattice import (
    A1,
    MUKAI_LAMBDA1,
    MUKAI_LAMBDA2,
    NO_CERTIFIED,
    NONE_FOUND,
    U,
    YES,
    EnumerationLimit,
    IntegralLattice,
    build_named,
    certified_box,
    det_bareiss,
    direct_sum,
    discriminant_group,
    divisibility,
    e8,
    enumerate_square,
    hyperbolic_plane_exists,
    integer_kernel,
    isotropic_exists,
    ls_lattice,
    mukai24_default,
    mukai_vector_coords,
    neg_two_obstruction,
    orthogonal_complement,
    pair,
    quotient_by_isotropic,
    scaled,
    signature,
    smith_invariants,
    unimodular_with_first_column,
)

A1A1 = direct_sum(A1, A1)
small = st.integers(-9, 9)


def matrices(max_rank=5):
    return st.integers(1, max_rank).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n))


def sym_forms(max_rank=4, lo=-6, hi=6):
    def build(n):
        return st.lists(st.integers(lo, hi), min_size=n * (n + 1) // 2,
                        max_size=n * (n + 1) // 2).map(lambda xs: _sym(n, xs))
    return st.integers(1, max_rank).flatmap(build)


def _sym(n, xs):
    m = [[0] * n for _ in range(n)]
    it = iter(xs)
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = next(it)
    return m


def test_pairings():
    assert pair(A1A1.vector((1, 0)), A1A1.vector((1, 0))) == 2
    assert pair(U.vector((1, 0)), U.vector((0, 1))) == 1
    assert e8().square([1, 0, 0, 0, 0, 0, 0, 0]) == -2
    with pytest.raises(InputError):
        pair(A1A1.vector((1, 0)), U.vector((1, 0)))


def test_non_symmetric_rejected_with_indices():
    with pytest.raises(InputError, match=r"\(0,1\)"):
        IntegralLattice(((1, 2), (3, 4)))


def test_degenerate_rejected_by_default():
    with pytest.raises(InputError):
        IntegralLattice(((1, 1), (1, 1)))
    assert IntegralLattice(((1, 1), (1, 1)), allow_degenerate=True).det == 0


@given(matrices())
def test_det_matches_sympy(m):
    assert det_bareiss(m) == sympy.Matrix(m).det()


@given(matrices())
def test_smith_matches_sympy(m):
    ours = smith_invariants(m)
    snf = smith_normal_form(sympy.Matrix(m), domain=sympy.ZZ)
    theirs = [abs(int(snf[i, i])) for i in range(min(snf.shape)) if snf[i, i] != 0]
    assert ours == theirs
    for a, b in zip(ours, ours[1:]):
        assert b % a == 0


@given(matrices())
def test_smith_product_is_det(m):
    d = det_bareiss(m)
    inv = smith_invariants(m)
    if d:
        assert math.prod(inv) == abs(d)
    else:
        assert len(inv) < len(m)


def test_discriminant_groups():
    assert discriminant_group(A1A1) == [2, 2]
    for a, b in [(1, 2), (2, 3), (1, 1)]:
        z = IntegralLattice(((2 * (a * a + b * b),),))
        assert discriminant_group(z) == [2 * (a * a + b * b)]
    ls = discriminant_group(ls_lattice(1))
    assert math.prod(ls) == 80
    assert discriminant_group(mukai24_default()) == []


def test_named():
    assert ls_lattice(1).det == 80
    assert ls_lattice(3).det == 240
    assert build_named("A1+A1").gram == ((2, 0), (0, 2))
    lam = build_named("Lambda22")
    assert lam.rank == 22 and signature(lam) == (2, 20, 0)
    assert e8().det == 1 and signature(e8()) == (0, 8, 0)
    assert build_named("Ls(2)").det == 160
    with pytest.raises(InputError):
        build_named("K3")
    with pytest.raises(InputError):
        ls_lattice(0)


@given(sym_forms(5))
def test_signature_matches_eigenvalues(m):
    l = IntegralLattice.from_rows(m, allow_degenerate=True)
    ev = np.linalg.eigvalsh(np.array(m, dtype=float))
    tol = 1e-9
    expect = (int((ev > tol).sum()), int((ev < -tol).sum()))
    p, n, z = signature(l)
    assert (p, n) == expect
    assert p + n + z == len(m)


def test_divisibility():
    assert divisibility(U.vector((1, 0))) == 1
    m = mukai24_default()
    v = m.vector(mukai_vector_coords(1, 2))
    assert divisibility(2 * v) == 2 * divisibility(v)
    with pytest.raises(InputError):
        divisibility(U.vector((0, 0)))


def test_ambient_divisibility_of_polarization():
    m = mukai24_default()
    for a, b in [(1, 2), (1, 0), (1, 1), (3, 5)]:
        comp = orthogonal_complement(m, [mukai_vector_coords(a, b)])
        h = mukai_vector_coords(b, -a)
        g = 0
        for bv in comp.basis:
            g = math.gcd(g, m.pair_coords(h, bv))
        assert g == a * a + b * b


def test_complements():
    m = mukai24_default()
    c = orthogonal_complement(m, [MUKAI_LAMBDA1, MUKAI_LAMBDA2])
    assert c.rank == 22
    assert math.prod(discriminant_group(c.lattice)) == 4
    assert signature(c.lattice) == (2, 20, 0)
    cu = orthogonal_complement(U, [(1, 0)])
    assert cu.basis == ((1, 0),)


@given(sym_forms(4), st.lists(small, min_size=4, max_size=4))
def test_complement_properties(m, raw):
    l = IntegralLattice.from_rows(m, allow_degenerate=True)
    v = raw[: l.rank]
    assume(any(v))
    comp = orthogonal_complement(l, [v])
    for b in comp.basis:
        assert l.pair_coords(b, v) == 0
    # saturation: the basis extends to a basis of Z^n iff its maximal minors are coprime
    if comp.basis:
        mat = sympy.Matrix(comp.basis)
        g = 0
        for cols in __import__("itertools").combinations(range(l.rank), len(comp.basis)):
            g = math.gcd(g, int(mat[:, list(cols)].det()))
        assert g == 1
    expected_rank = l.rank - (1 if any(l.apply(v)) else 0)
    assert comp.rank == expected_rank


@given(st.lists(small, min_size=2, max_size=5))
def test_integer_kernel_one_row(row):
    ker = integer_kernel([row], len(row))
    for k in ker:
        assert sum(a * b for a, b in zip(row, k)) == 0
    assert len(ker) == len(row) - (1 if any(row) else 0)


@given(st.lists(small, min_size=2, max_size=5))
def test_unimodular_completion(v):
    g = 0
    for x in v:
        g = math.gcd(g, x)
    assume(g == 1)
    b = unimodular_with_first_column(v)
    assert [r[0] for r in b] == v
    assert abs(det_bareiss(b)) == 1


def test_enumerate_examples():
    assert enumerate_square(A1A1, -2, 5).vectors == ()
    assert enumerate_square(A1A1, -2, 5).exhaustive
    got = enumerate_square(A1A1, 10, 1)
    assert len(got.vectors) == 8 and got.exhaustive
    assert set(got.vectors) == {(a, b) for a, b in product(range(-3, 4), repeat=2)
                                if 2 * a * a + 2 * b * b == 10}
    iso = enumerate_square(U, 0, 3)
    assert {(1, 0), (0, 1), (2, 0)} <= set(iso.vectors)
    assert not iso.exhaustive


def test_enumerate_negative_definite():
    e = enumerate_square(e8(), -2, 1)
    assert e.exhaustive and len(e.vectors) == 240


def test_enumeration_limit(monkeypatch):
    monkeypatch.setenv("KU_STAB_MAX_ENUM", "100")
    with pytest.raises(EnumerationLimit):
        enumerate_square(direct_sum(U, U), 0, 5)
    monkeypatch.setenv("KU_STAB_MAX_ENUM", "bogus")
    with pytest.raises(InputError):
        enumerate_square(direct_sum(U, U), 0, 1)


@given(sym_forms(3, 0, 5).map(lambda m: [[x + (4 if i == j else 0) for j, x in enumerate(r)]
                                        for i, r in enumerate(m)]),
       st.integers(1, 30))
def test_definite_enumeration_is_complete(m, s):
    l = IntegralLattice.from_rows(m, allow_degenerate=True)
    assume(signature(l)[0] == l.rank)
    en = enumerate_square(l, s, 1)
    box = certified_box(l, s)
    rngs = [range(-2 * b - 1, 2 * b + 2) for b in box]
    brute = sorted(v for v in product(*rngs) if any(v) and l.square(v) == s)
    assert list(en.vectors) == brute


def test_isotropy_examples():
    r = isotropic_exists(U, 5)
    assert r.status == YES and r.witness == (1, 0)
    assert isotropic_exists(A1A1, 5).status == NO_CERTIFIED
    assert isotropic_exists(IntegralLattice(((2, 1), (1, -2))), 5).status == NO_CERTIFIED
    deg = IntegralLattice(((1, 1), (1, 1)), allow_degenerate=True)
    r = isotropic_exists(deg, 3)
    assert r.status == YES and deg.square(r.witness) == 0


def test_isotropy_rank2_brute_force_fixed():
    # [[2,1],[1,-2]] has no isotropic vector in a large box either
    l = IntegralLattice(((2, 1), (1, -2)))
    assert not any(l.square(v) == 0 for v in product(range(-100, 101), repeat=2) if any(v))


@given(small, small, small)
def test_rank2_isotropy_vs_brute_force(a, b, c):
    assume(a * c - b * b != 0)
    l = IntegralLattice(((a, b), (b, c)))
    res = isotropic_exists(l, 10)
    r = range(-40, 41)
    brute = any(a * x * x + 2 * b * x * y + c * y * y == 0 for x in r for y in r if x or y)
    assert (res.status == YES) == brute
    if res.status == YES:
        assert l.square(res.witness) == 0 and any(res.witness)


def test_isotropy_rank3():
    l = direct_sum(A1, A1, IntegralLattice(((-2,),)))
    r = isotropic_exists(l, 5)
    assert r.status == YES and l.square(r.witness) == 0
    no = IntegralLattice(((1, 0, 0), (0, 1, 0), (0, 0, -3)))
    assert isotropic_exists(no, 10).status == NONE_FOUND


def test_hyperbolic_examples():
    r = hyperbolic_plane_exists(U, 3)
    assert r.status == YES and r.witness == ((1, 0), (0, 1))
    assert hyperbolic_plane_exists(A1A1, 3).status == NO_CERTIFIED
    l = direct_sum(U, scaled(A1, -1))
    r = hyperbolic_plane_exists(l, 2)
    assert r.status == YES
    u, w = r.witness
    assert l.square(u) == l.square(w) == 0 and l.pair_coords(u, w) == 1
    # U(2) is rank 2 with det -4
    assert hyperbolic_plane_exists(scaled(U, 2), 5).status == NO_CERTIFIED


def test_hyperbolic_needs_odd_fix():
    # <1> + <-1> + <1>: isotropic vectors exist, partner must fix parity
    l = IntegralLattice(((1, 0, 0), (0, -1, 0), (0, 0, 1)))
    r = hyperbolic_plane_exists(l, 3)
    if r.status == YES:
        u, w = r.witness
        assert l.square(u) == l.square(w) == 0 and l.pair_coords(u, w) == 1


def test_neg_two_obstruction():
    for s in (1, 3):
        rep = neg_two_obstruction(s, 100)
        assert rep.passed
    squares = {(x * x) % 4 for x in range(4)}
    assert all((a + b) % 4 != 3 for a in squares for b in squares)


def test_neg_two_brute_force_oracle():
    s = 1
    r = range(-12, 13)
    assert not any(2 * x * x + 2 * y * y - 8 * s * k * k == -2 for x in r for y in r for k in r)


def test_quotient_by_isotropic():
    amb = direct_sum(U, A1A1)
    comp = orthogonal_complement(amb, [(1, 0, 0, 0)])
    sub = comp.lattice
    idx = [list(b) for b in comp.basis].index([1, 0, 0, 0])
    v = [0] * comp.rank
    v[idx] = 1
    q = quotient_by_isotropic(sub, v)
    assert q.rank == 2 and abs(q.det) == 4
