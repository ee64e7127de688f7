from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from irrpoints.errors import DimensionError, SingularMatrixError
from irrpoints.linalg import det, hadamard_bound, nullspace, primitive, rank, solve_cramer


def leibniz(M):
    """Permutation-expansion determinant, an independent oracle."""
    n = len(M)
    total = 0
    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        term = -1 if inv % 2 else 1
        for i in range(n):
            term *= M[i][p[i]]
        total += term
    return total


def square(n, lo=-9, hi=9):
    return st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)


def test_det_examples():
    assert det([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    assert det([[3, -1], [-1, 4]]) == 11
    assert det([[1, 2, 3], [4, 5, 6], [1, 2, 3]]) == 0
    assert det([[Fraction(1, 2), 1], [1, Fraction(1, 3)]]) == Fraction(1, 6) - 1


def test_det_nonsquare():
    with pytest.raises(DimensionError):
        det([[1, 2, 3], [4, 5, 6]])


@given(st.integers(2, 4).flatmap(square))
def test_det_matches_permutation_expansion(M):
    assert det(M) == leibniz(M)


@given(st.integers(3, 4).flatmap(square), st.data())
def test_row_swap_negates(M, data):
    n = len(M)
    i, j = data.draw(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda t: t[0] != t[1]))
    N = [row[:] for row in M]
    N[i], N[j] = N[j], N[i]
    assert det(N) == -det(M)


@given(st.integers(1, 4).flatmap(square))
def test_hadamard_dominates(M):
    assert abs(det(M)) <= hadamard_bound(M)


def test_hadamard_examples():
    for n in (1, 2, 3, 4):
        eye = [[int(i == j) for j in range(n)] for i in range(n)]
        h = hadamard_bound(eye)
        # certified upper value of n^(n/2), tight to high precision
        assert h ** 2 >= n ** n
        assert float(h) == pytest.approx(n ** (n / 2), rel=1e-12)
    assert float(hadamard_bound([[5] * 3] * 3)) == pytest.approx(125 * 3 ** 1.5, rel=1e-12)
    assert hadamard_bound([[-7]]) == 7


def test_cramer_examples():
    assert solve_cramer([[1, 0], [0, 1]], [5, 7]) == (5, 7)
    assert solve_cramer([[1, 1], [2, -1]], [1, 2]) == (1, 0)
    assert solve_cramer([[2, -1], [-1, 2]], [2, 2]) == (2, 2)
    with pytest.raises(SingularMatrixError):
        solve_cramer([[1, 2], [2, 4]], [1, 1])


@given(st.integers(1, 4).flatmap(square), st.data())
def test_cramer_round_trip(M, data):
    rhs = data.draw(st.lists(st.integers(-20, 20), min_size=len(M), max_size=len(M)))
    if det(M) == 0:
        return
    x = solve_cramer(M, rhs)
    assert all(isinstance(v, Fraction) for v in x)
    assert [sum(a * b for a, b in zip(row, x)) for row in M] == rhs


@given(st.integers(1, 4).flatmap(lambda n: st.lists(
    st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=n, max_size=n)))
def test_nullspace_rank(M):
    K = nullspace(M, 4)
    assert len(K) == 4 - rank(M)
    for v in K:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)


def test_primitive():
    assert primitive([Fraction(2, 3), Fraction(4, 3)]) == (1, 2)
    assert primitive([-4, 6]) == (-2, 3)
    assert primitive([0, 0]) == (0, 0)


def test_fraction_canonical():
    x = Fraction(6, -4)
    assert (x.numerator, x.denominator) == (-3, 2)
