from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from ku_stab.exact import InputError
from ku_stab.mutation import (
    EulerContext,
    KClass,
    Step,
    builtin_context,
    chi,
    chi_line_q3,
    chi_q3,
    left_mutate,
    mutate_collection,
    new_euler_by_base_change,
    parse_script,
    quadric3_context,
    right_mutate,
    sigma_context,
)
from ku_stab.chern import line_bundle_y


@st.composite
def exceptional_contexts(draw, max_n=5):
    n = draw(st.integers(2, max_n))
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 1
        for j in range(i + 1, n):
            rows[i][j] = draw(st.integers(-6, 6))
    return EulerContext(tuple(tuple(r) for r in rows), tuple(f"E{i}" for i in range(n)))


@st.composite
def context_and_step(draw):
    ctx = draw(exceptional_contexts())
    p = draw(st.integers(0, ctx.size - 2))
    kind = draw(st.sampled_from("LR"))
    shift = draw(st.integers(-2, 2))
    return ctx, Step(kind, p, shift)


@given(context_and_step())
def test_single_mutation_properties(cs):
    ctx, step = cs
    r = mutate_collection(ctx, [step])
    assert r.context.is_unit_upper_triangular()
    assert abs(r.context.determinant()) == abs(ctx.determinant()) == 1
    assert r.context.euler == new_euler_by_base_change(ctx, r.classes)


@given(exceptional_contexts(), st.data())
def test_L_then_R_is_identity(ctx, data):
    p = data.draw(st.integers(0, ctx.size - 2))
    r = mutate_collection(ctx, [Step("L", p), Step("R", p)])
    assert r.context.euler == ctx.euler
    assert r.classes == tuple(ctx.basis_class(i).coords for i in range(ctx.size))


@given(exceptional_contexts(), st.data())
def test_R_then_L_is_identity(ctx, data):
    p = data.draw(st.integers(0, ctx.size - 2))
    r = mutate_collection(ctx, [Step("R", p), Step("L", p)])
    assert r.context.euler == ctx.euler


@given(exceptional_contexts(), st.lists(st.tuples(st.sampled_from("LR"), st.integers(0, 3)), max_size=6))
def test_sequences_stay_exceptional(ctx, raw):
    steps = [Step(k, p % (ctx.size - 1)) for k, p in raw]
    r = mutate_collection(ctx, steps)
    assert r.context.is_unit_upper_triangular()
    m = sympy.Matrix([[int(x) for x in c] for c in r.classes])
    assert abs(m.det()) == 1  # still a basis


def test_left_right_single_class():
    ctx = quadric3_context()
    o, s = ctx.basis_class(1), ctx.basis_class(2)
    lo = left_mutate(ctx, 1, s)
    assert chi(ctx, o, lo) == 0
    ro = right_mutate(ctx, 2, o)
    assert chi(ctx, ro, s) == 0


def test_quadric3_context():
    ctx = quadric3_context()
    assert ctx.is_unit_upper_triangular()
    assert ctx.determinant() == 1
    assert [[int(x) for x in r] for r in ctx.euler] == [
        [1, 5, 16, 14], [0, 1, 4, 5], [0, 0, 1, 4], [0, 0, 0, 1]]


@pytest.mark.parametrize("k", range(-6, 7))
def test_line_bundle_chi_vs_binomial(k):
    assert chi_q3(line_bundle_y(0), line_bundle_y(k)) == chi_line_q3(k)


def test_chi_line_values():
    assert chi_line_q3(1) == 5 and chi_line_q3(2) == 14
    assert chi_line_q3(-1) == chi_line_q3(-2) == 0
    assert chi_line_q3(-3) == -1


def test_sigma_context_mutation():
    ctx = sigma_context()
    assert not ctx.is_unit_upper_triangular()
    r = mutate_collection(ctx, "L0")
    assert abs(r.context.determinant()) == 256
    assert r.context.euler == new_euler_by_base_change(ctx, r.classes)


def test_parse_script():
    assert parse_script("L0, R2[1],L1[-2]") == [Step("L", 0), Step("R", 2, 1), Step("L", 1, -2)]
    assert parse_script("") == []
    with pytest.raises(InputError, match="character 4"):
        parse_script("L0, X1")


def test_bad_positions_and_pivots():
    ctx = quadric3_context()
    with pytest.raises(InputError):
        mutate_collection(ctx, "L3")
    bad = EulerContext(((2, 0), (0, 1)), ("A", "B"))
    with pytest.raises(InputError):
        mutate_collection(bad, "L0")
    with pytest.raises(InputError):
        EulerContext(((1, 0),), ("A",))
    with pytest.raises(InputError):
        builtin_context("P3")


def test_shift_sign():
    ctx = quadric3_context()
    a = mutate_collection(ctx, "L0")
    b = mutate_collection(ctx, "L0[1]")
    assert b.classes[0] == tuple(-x for x in a.classes[0])
    assert b.context.basis_labels[0].endswith("[1]")


def test_kclass_arith():
    a = KClass((1, 2))
    assert (a + a - a).coords == a.coords
    assert a.scale(Fraction(1, 2)).coords == (Fraction(1, 2), 1)
