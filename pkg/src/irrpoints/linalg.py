"""Exact rational linear algebra on nested sequences of ints/Fractions.

Matrices are plain row-major lists of lists; every entry is promoted to
``Fraction`` so results are exact and in lowest terms.
"""
from fractions import Fraction
from math import gcd
from typing import Sequence

from ._certified import sqrt_pow_upper
from .errors import DimensionError, SingularMatrixError

Matrix = Sequence[Sequence]


def as_matrix(M: Matrix) -> list[list[Fraction]]:
    rows = [[Fraction(v) for v in row] for row in M]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise DimensionError("ragged matrix")
    return rows


def _require_square(M):
    n = len(M)
    if any(len(row) != n for row in M):
        raise DimensionError(f"expected a square matrix, got {n}x{len(M[0]) if n else 0}")
    return n


def det(M: Matrix) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination.

    Entries are scaled to integers first, so every intermediate value is an
    integer minor of the scaled matrix.
    """
    A = as_matrix(M)
    n = _require_square(A)
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    rows = []
    for row in A:
        den = 1
        for v in row:
            den = den * v.denominator // gcd(den, v.denominator)
        scale /= den
        rows.append([int(v * den) for v in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k] != 0:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = rows[k][k]
        for i in range(k + 1, n):
            ri = rows[i]
            rk = rows[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pivot - ri[k] * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    return sign * rows[n - 1][n - 1] * scale


def solve_cramer(M: Matrix, rhs: Sequence) -> tuple[Fraction, ...]:
    """Solve ``M x = rhs`` exactly by Cramer's rule."""
    A = as_matrix(M)
    n = _require_square(A)
    if len(rhs) != n:
        raise DimensionError("rhs length does not match matrix")
    d = det(A)
    if d == 0:
        raise SingularMatrixError("matrix is singular")
    b = [Fraction(v) for v in rhs]
    out = []
    for j in range(n):
        Aj = [row[:j] + [b[i]] + row[j + 1:] for i, row in enumerate(A)]
        out.append(det(Aj) / d)
    return tuple(out)


def hadamard_bound(M: Matrix) -> Fraction:
    """Upper bound on |det M|: the product over rows of (max |entry|) * sqrt(n)."""
    A = as_matrix(M)
    n = _require_square(A)
    h = Fraction(1)
    for row in A:
        h *= max((abs(v) for v in row), default=Fraction(0))
    return h * sqrt_pow_upper(n, n)


def rref(M: Matrix):
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    A = as_matrix(M)
    if not A:
        return [], []
    ncols = len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(M: Matrix) -> int:
    return len(rref(M)[1])


def nullspace(M: Matrix, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {x : M x = 0}."""
    if not M:
        n = ncols or 0
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    R, piv = rref(M)
    n = len(M[0])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, p in zip(R, piv):
            x[p] = -row[f]
        basis.append(x)
    return basis


def primitive(v: Sequence) -> tuple[int, ...]:
    """Positive rescaling of a rational vector to a primitive integer vector."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))
