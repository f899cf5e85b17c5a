"""Shared hypothesis strategies."""

from fractions import Fraction

from hypothesis import strategies as st

small = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def matrices(rows, cols, elements=small):
    return st.lists(st.lists(elements, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@st.composite
def square(draw, min_n=1, max_n=5):
    n = draw(st.integers(min_n, max_n))
    return draw(matrices(n, n))


@st.composite
def symmetric(draw, min_n=1, max_n=5):
    n = draw(st.integers(min_n, max_n))
    upper = draw(matrices(n, n))
    return [[upper[min(i, j)][max(i, j)] for j in range(n)] for i in range(n)]


def frac_matrix(m):
    return [[Fraction(x) for x in row] for row in m]
