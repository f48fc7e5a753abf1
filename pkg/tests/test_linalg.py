from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from quiverbs.linalg import char_poly, det, identity, inverse, matmul, nullspace, rank, rref, solve

small = st.integers(-4, 4)


def test_rank_and_nullspace():
    m = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert rank(m) == 2
    (v,) = nullspace(m)
    assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in m)


def test_rref_pivots():
    red, piv = rref([[0, 2, 4], [1, 1, 1]])
    assert piv == [0, 1]
    assert red[1] == [0, 1, 2]


def test_solve_inconsistent():
    assert solve([[1], [1]], [[1], [2]]) is None


def test_char_poly_of_companion():
    # x^2 - 3x + 2
    assert char_poly([[0, -2], [1, 3]]) == [2, -3, 1]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_inverse_and_det(m):
    d = det(m)
    if d:
        assert matmul(m, inverse(m)) == identity(3)
        assert det(inverse(m)) == 1 / d
    else:
        assert rank(m) < 3
