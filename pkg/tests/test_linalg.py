from fractions import Fraction

import sympy
from hypothesis import given
from hypothesis import strategies as st

from sullivan import linalg


@st.composite
def matrices(draw, max_rows=6, max_cols=7):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    rows = [[Fraction(draw(st.integers(-3, 3)), draw(st.integers(1, 3))) for _ in range(c)] for _ in range(r)]
    return linalg.matrix(rows, c)


@given(matrices())
def test_rank_matches_sympy(A):
    r, c = A.shape
    oracle = sympy.Matrix(r, c, [sympy.Rational(x.numerator, x.denominator) for x in A.flatten()]).rank() if r and c else 0
    assert linalg.rank(A) == oracle


@given(matrices())
def test_rank_nullity(A):
    ker = linalg.kernel(A)
    assert linalg.rank(A) + len(ker) == A.shape[1]
    for v in ker:
        assert not any(linalg.matvec(A, v))


@given(matrices(), st.data())
def test_solver_finds_preimages(A, data):
    x = [Fraction(data.draw(st.integers(-3, 3))) for _ in range(A.shape[1])]
    b = linalg.matvec(A, x)
    sol = linalg.Solver(A).solve(b)
    assert sol is not None
    assert list(linalg.matvec(A, sol)) == list(b)


def test_inconsistent_system():
    A = linalg.matrix([[1, 0], [0, 0]], 2)
    assert linalg.Solver(A).solve([0, 1]) is None
    sol = linalg.solve_linear(A, [0, 1])
    assert not sol.consistent


def test_inverse():
    A = linalg.matrix([[2, 1], [1, 1]], 2)
    assert linalg.equal(linalg.matmul(A, linalg.inverse(A)), linalg.identity(2))
    assert not linalg.is_invertible(linalg.matrix([[1, 2], [2, 4]], 2))


def test_rref_pivots():
    R, piv = linalg.rref(linalg.matrix([[0, 2, 4], [0, 1, 2], [1, 0, 1]], 3))
    assert piv == [0, 1]
    assert [list(r) for r in R] == [[1, 0, 1], [0, 1, 2], [0, 0, 0]]
