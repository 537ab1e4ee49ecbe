from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from linf import linalg


def F(x):
    return Fraction(x)


def test_rref_simple():
    rows = [[F(2), F(4), F(2)], [F(1), F(2), F(3)]]
    red, piv = linalg.rref(rows, 3)
    assert piv == [0, 2]
    assert red == [[F(1), F(2), F(0)], [F(0), F(0), F(1)]]


def test_rank_and_kernel():
    rows = [[F(1), F(2), F(3)], [F(2), F(4), F(6)], [F(1), F(1), F(1)]]
    assert linalg.rank(rows, 3) == 2
    ker = linalg.kernel_basis(rows, 3)
    assert len(ker) == 1
    for row in rows:
        assert sum(a * b for a, b in zip(row, ker[0])) == 0


def test_solve_consistent_and_not():
    rows = [[F(1), F(1)], [F(1), F(-1)]]
    x = linalg.solve(rows, [F(3), F(1)], 2)
    assert x == [F(2), F(1)]
    rows = [[F(1), F(1)], [F(2), F(2)]]
    assert linalg.solve(rows, [F(1), F(3)], 2) is None
    # underdetermined: free variable pinned to zero
    x = linalg.solve([[F(0), F(1), F(1)]], [F(5)], 3)
    assert x == [F(0), F(5), F(0)]


def test_reduce_mod_rowspace():
    red, piv = linalg.rref([[F(1), F(0), F(1)]], 3)
    v = linalg.reduce_mod_rowspace(red, piv, [F(2), F(3), F(2)])
    assert v == [F(0), F(3), F(0)]
    assert not linalg.in_span(red, piv, [F(2), F(3), F(2)])
    assert linalg.in_span(red, piv, [F(7), F(0), F(7)])


@given(st.lists(st.lists(st.integers(min_value=-6, max_value=6),
                         min_size=4, max_size=4), min_size=1, max_size=5))
@settings(max_examples=60, deadline=None)
def test_kernel_annihilates_and_rank_consistent(mat):
    rows = [[F(x) for x in row] for row in mat]
    r = linalg.rank(rows, 4)
    ker = linalg.kernel_basis(rows, 4)
    assert r + len(ker) == 4
    for k in ker:
        for row in rows:
            assert sum(a * b for a, b in zip(row, k)) == 0
