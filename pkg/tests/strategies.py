from fractions import Fraction

from hypothesis import strategies as st

small_ints = st.integers(min_value=-20, max_value=20)
rats = st.fractions(min_value=-20, max_value=20, max_denominator=24)
nonzero_rats = rats.filter(lambda x: x != 0)


def chern_y(with_ch3=True):
    ch3 = rats if with_ch3 else st.none()
    return st.builds(lambda a, b, c, d: (a, b, c, d), rats, rats, rats, ch3)


def sigma_classes():
    return st.tuples(rats, rats, rats, rats)


def int_sigma_classes(bound=15):
    i = st.integers(-bound, bound)
    return st.tuples(i, i, i, i)


def frac(s):
    return Fraction(s)
