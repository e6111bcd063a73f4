from fractions import Fraction

from hypothesis import strategies as st


def rationals(max_num: int = 30, max_den: int = 12, nonzero: bool = False):
    s = st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))
    return s.filter(lambda q: q != 0) if nonzero else s


def thetas():
    return st.tuples(*[rationals(40, 14)] * 4)
