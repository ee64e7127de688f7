"""H-polytopes, parallelepipeds and their integer points.

This layer is the ground truth the covering and bounds modules are checked
against: lattice enumeration, the midpoint (ir)reducibility test and exact
vertices of both ``P`` and its integer hull.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import CapacityError, DimensionError, DomainError, EmptyError, UnboundedError
from .linalg import det, primitive, solve_cramer
from .lp import lp_feasible

DEFAULT_MAX_POINTS = 10 ** 6


def _int_tuple(v, what):
    out = []
    for x in v:
        f = Fraction(x)
        if f.denominator != 1:
            raise ValueError(f"{what} must be integral, got {x}")
        out.append(int(f))
    return tuple(out)


@dataclass(frozen=True)
class HPolytope:
    """The polyhedron ``{x : A x <= b}`` with integer data."""

    A: tuple[tuple[int, ...], ...]
    b: tuple[int, ...]

    def __post_init__(self):
        A = tuple(_int_tuple(row, "A") for row in self.A)
        b = _int_tuple(self.b, "b")
        if not A or not A[0]:
            raise DimensionError("need m >= 1 and n >= 1")
        if any(len(r) != len(A[0]) for r in A) or len(b) != len(A):
            raise DimensionError("inconsistent shapes for A and b")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @classmethod
    def from_relations(cls, A, b, rel=None):
        """Build from mixed ``<=``/``>=`` rows (``rel`` entries are "le" or "ge")."""
        if rel is None:
            return cls(A, b)
        if len(rel) != len(A):
            raise DimensionError("rel must have one entry per row")
        rows, rhs = [], []
        for row, bi, r in zip(A, b, rel):
            if r in ("le", "<="):
                rows.append(tuple(row))
                rhs.append(bi)
            elif r in ("ge", ">="):
                rows.append(tuple(-v for v in row))
                rhs.append(-bi)
            else:
                raise ValueError(f"unknown relation {r!r}")
        return cls(tuple(rows), tuple(rhs))

    @property
    def m(self):
        return len(self.A)

    @property
    def n(self):
        return len(self.A[0])

    @property
    def alpha(self):
        return max(abs(v) for row in self.A for v in row)

    @property
    def beta(self):
        return max(abs(v) for v in self.b)

    @property
    def gamma(self):
        return max(self.alpha, self.beta)

    def constraints(self):
        return [(row, "<=", bi) for row, bi in zip(self.A, self.b)]

    def to_hpolytope(self):
        return self


@dataclass(frozen=True)
class Box:
    """Parallelepiped ``{x : lo <= A x <= hi}`` with non-singular integer ``A``."""

    A: tuple[tuple[int, ...], ...]
    lo: tuple[int, ...]
    hi: tuple[int, ...]

    def __post_init__(self):
        A = tuple(_int_tuple(row, "A") for row in self.A)
        lo = _int_tuple(self.lo, "lo")
        hi = _int_tuple(self.hi, "hi")
        n = len(A)
        if n == 0 or any(len(r) != n for r in A) or len(lo) != n or len(hi) != n:
            raise DimensionError("Box needs a square A and bounds of matching length")
        if det(A) == 0:
            raise DomainError("Box matrix is singular")
        if any(l > h for l, h in zip(lo, hi)):
            raise DomainError("Box requires lo <= hi componentwise")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def n(self):
        return len(self.A)

    def widths(self):
        return tuple(h - l for l, h in zip(self.lo, self.hi))

    def constraints(self):
        out = []
        for row, l, h in zip(self.A, self.lo, self.hi):
            out.append((row, "<=", h))
            out.append((row, ">=", l))
        return out

    def to_hpolytope(self) -> HPolytope:
        rows = list(self.A) + [tuple(-v for v in r) for r in self.A]
        return HPolytope(tuple(rows), tuple(self.hi) + tuple(-v for v in self.lo))


@dataclass(frozen=True)
class LatticeSet:
    """Finite set of integer points, kept in lexicographic order."""

    points: tuple[tuple[int, ...], ...]
    dim: int
    _index: frozenset = field(default=frozenset(), repr=False, compare=False)

    def __post_init__(self):
        pts = tuple(sorted(set(tuple(int(v) for v in p) for p in self.points)))
        if any(len(p) != self.dim for p in pts):
            raise DimensionError("point of wrong dimension in LatticeSet")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "_index", frozenset(pts))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, x):
        return tuple(x) in self._index

    def as_array(self) -> np.ndarray:
        return np.array(self.points, dtype=np.int64).reshape(len(self.points), self.dim)


Polyhedron = HPolytope | Box


def _dim(P):
    return P.n


def contains(P: Polyhedron, x: Sequence) -> bool:
    if len(x) != _dim(P):
        raise DimensionError(f"point of dimension {len(x)} tested against a {_dim(P)}-dim polyhedron")
    x = [Fraction(v) for v in x]
    if isinstance(P, Box):
        for row, l, h in zip(P.A, P.lo, P.hi):
            v = sum(a * xi for a, xi in zip(row, x))
            if not l <= v <= h:
                return False
        return True
    for row, bi in zip(P.A, P.b):
        if sum(a * xi for a, xi in zip(row, x)) > bi:
            return False
    return True


def is_feasible(P: Polyhedron) -> bool:
    return lp_feasible(P.constraints(), dim=_dim(P)).feasible


def recession_direction(P: Polyhedron):
    """A nonzero ``d`` with ``A d <= 0``, or None when the recession cone is trivial."""
    H = P.to_hpolytope()
    n = H.n
    for j in range(n):
        for sign in (1, -1):
            e = [0] * n
            e[j] = sign
            rows = [(row, "<=", 0) for row in H.A] + [(e, ">=", 1)]
            res = lp_feasible(rows, dim=n)
            if res.feasible:
                return primitive(res.witness)
    return None


def check_bounded(P: Polyhedron):
    d = recession_direction(P)
    if d is not None:
        raise UnboundedError(d)


def vertices(P: Polyhedron) -> list[tuple[Fraction, ...]]:
    """All vertices, from non-singular n-row subsystems turned into equations."""
    H = P.to_hpolytope()
    if not is_feasible(H):
        raise EmptyError("polyhedron is empty")
    check_bounded(H)
    n = H.n
    out = set()
    for rows in combinations(range(H.m), n):
        M = [H.A[i] for i in rows]
        if det(M) == 0:
            continue
        v = solve_cramer(M, [H.b[i] for i in rows])
        if contains(H, v):
            out.add(v)
    return sorted(out)


# ---------------------------------------------------------------- enumeration

def _integer_rows(rows):
    """Scale rows ``a.x <= r`` to primitive integer ``a`` and floor ``r``."""
    out = {}
    for a, r in rows:
        key, rr = _primitive_row(a, r)
        if all(v == 0 for v in key):
            if rr < 0:
                return None
            continue
        r_int = rr.numerator // rr.denominator
        if key not in out or r_int < out[key]:
            out[key] = r_int
    return list(out.items())


def _primitive_row(a, r):
    a = [Fraction(v) for v in a]
    den = 1
    for v in a:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in a]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return tuple(ints), Fraction(r)
    return tuple(v // g for v in ints), Fraction(r) * den / g


def _project_last(rows, j):
    """Fourier-Motzkin: eliminate variable ``j`` from integer rows ``(a, r)``."""
    pos = [(a, r) for a, r in rows if a[j] > 0]
    neg = [(a, r) for a, r in rows if a[j] < 0]
    out = [(a, Fraction(r)) for a, r in rows if a[j] == 0]
    for ap, rp in pos:
        for an, rn in neg:
            fp, fn = -an[j], ap[j]
            out.append(([fp * x + fn * y for x, y in zip(ap, an)], fp * rp + fn * rn))
    return _integer_rows(out)


def _slicing_systems(H):
    n = H.n
    levels = [None] * n
    rows = _integer_rows([(row, bi) for row, bi in zip(H.A, H.b)])
    levels[n - 1] = rows
    for j in range(n - 1, 0, -1):
        rows = _project_last(rows, j)
        if rows is None:
            return None
        levels[j - 1] = rows
    return levels


def _iter_lattice(H, max_points):
    levels = _slicing_systems(H)
    if levels is None:
        return
    n = H.n
    budget = [max_points]
    # per level: rows split into (coef on x_j, coef on prefix, rhs)
    split = []
    for j, rows in enumerate(levels):
        split.append([(a[j], a[:j], r) for a, r in rows])

    def rec(prefix):
        j = len(prefix)
        lo = hi = None
        for cj, cp, r in split[j]:
            rest = r - sum(c * x for c, x in zip(cp, prefix))
            if cj > 0:
                v = rest // cj
                if hi is None or v < hi:
                    hi = v
            elif cj < 0:
                v = -(rest // -cj)
                if lo is None or v > lo:
                    lo = v
            elif rest < 0:
                return
        if lo is None or hi is None:
            raise UnboundedError([int(i == j) for i in range(n)])
        if hi < lo:
            return
        budget[0] -= hi - lo + 1
        if budget[0] < 0:
            raise CapacityError(f"more than {max_points} lattice candidates")
        if j == n - 1:
            for v in range(lo, hi + 1):
                yield prefix + (v,)
        else:
            for v in range(lo, hi + 1):
                yield from rec(prefix + (v,))

    yield from rec(())


def enumerate_lattice(P: Polyhedron, max_points: int = DEFAULT_MAX_POINTS) -> LatticeSet:
    """All integer points of a bounded polyhedron, lexicographically sorted."""
    H = P.to_hpolytope()
    if not is_feasible(H):
        return LatticeSet((), H.n)
    check_bounded(H)
    return LatticeSet(tuple(_iter_lattice(H, max_points)), H.n)


# ---------------------------------------------------------------- irreducibility

def is_irreducible(x: Sequence[int], M: LatticeSet) -> bool:
    """True iff ``x`` is not the midpoint of two distinct points of ``M``."""
    x = tuple(x)
    if x not in M:
        raise DomainError(f"{x} is not a point of the lattice set")
    for y in M:
        if y <= x:
            continue  # d and -d give the same pair
        z = tuple(2 * a - b for a, b in zip(x, y))
        if z in M:
            return False
    return True


def irreducible_subset(M: LatticeSet) -> LatticeSet:
    if len(M) == 0:
        return M
    mask = kernels.reducible_mask(M.as_array())
    return LatticeSet(tuple(p for p, r in zip(M.points, mask) if not r), M.dim)


def irreducible_points(P: Polyhedron, max_points: int = DEFAULT_MAX_POINTS) -> LatticeSet:
    return irreducible_subset(enumerate_lattice(P, max_points))


# ---------------------------------------------------------------- integer hull

def in_convex_hull(x: Sequence, points: Iterable[Sequence]) -> bool:
    """Exact test ``x in conv(points)``."""
    pts = [tuple(p) for p in points]
    if not pts:
        return False
    n = len(x)
    k = len(pts)
    rows = []
    for c in range(n):
        rows.append(([p[c] for p in pts], "=", x[c]))
    rows.append(([1] * k, "=", 1))
    for i in range(k):
        e = [0] * k
        e[i] = -1
        rows.append((e, "<=", 0))
    return lp_feasible(rows, dim=k, method="simplex").feasible


def _hull_2d(pts):
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return sorted(set(lower[:-1] + upper[:-1]))


def convex_hull_vertices(points: Iterable[Sequence[int]], method: str = "auto") -> list[tuple[int, ...]]:
    """Vertices of conv(points) for integer points.

    ``method="lp"`` decides each irreducible candidate with an exact LP;
    ``"auto"`` uses a monotone chain in the plane and the LP route otherwise.
    """
    pts = sorted(set(tuple(int(v) for v in p) for p in points))
    if not pts:
        return []
    n = len(pts[0])
    if n == 1:
        return sorted({pts[0], pts[-1]})
    if method == "auto" and n == 2:
        return _hull_2d(pts)
    cand = irreducible_subset(LatticeSet(tuple(pts), n)).points
    out = []
    for i, v in enumerate(cand):
        others = cand[:i] + cand[i + 1:]
        if not in_convex_hull(v, others):
            out.append(v)
    return out


def integer_hull_vertices(P: Polyhedron, max_points: int = DEFAULT_MAX_POINTS) -> LatticeSet:
    """Vertices of ``conv(P ∩ Z^n)``, each decided by an exact LP."""
    M = enumerate_lattice(P, max_points)
    if len(M) == 0:
        raise EmptyError("polyhedron has no integer points")
    return LatticeSet(tuple(convex_hull_vertices(M.points, method="lp")), M.dim)
