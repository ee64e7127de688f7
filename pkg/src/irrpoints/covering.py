"""Covers of parallelepipeds, simplices and polytopes by parallelepipeds.

* :func:`partition_box` slices a parallelepiped into logarithmically many slabs
  per row so that each slab holds at most two irreducible points.
* :func:`triangulate` is a pulling triangulation from the lexicographically
  smallest vertex.
* :func:`cover_simplex` covers a simplex by ``(n+1) * C(n^2-2, n-1)``
  parallelepipeds whose facets are parallel to the simplex facets.
* :func:`cover_polytope` chains the two into a lattice-point cover of ``P``.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import ceil, floor
from typing import Sequence

from .errors import DegenerateError, DimensionError
from .linalg import det, dot, nullspace, primitive, rank
from .polytope import Box, HPolytope, Polyhedron, vertices


# ---------------------------------------------------------------- slab partition

def slab_exponent(width: int) -> int:
    """Smallest s >= 0 with ``width <= 3 * 2**s - 3``, i.e. ceil(log2(1 + width/3))."""
    if width < 0:
        raise ValueError("width must be nonnegative")
    s = 0
    while 3 * (1 << s) - 3 < width:
        s += 1
    return s


def slab_exponents(lo: Sequence[int], hi: Sequence[int]) -> tuple[int, ...]:
    """Exponents for the first n-1 rows; the last row is never sliced."""
    if len(lo) != len(hi):
        raise DimensionError("lo and hi differ in length")
    return tuple(slab_exponent(h - l) for l, h in zip(lo[:-1], hi[:-1]))


def _regime(j, s, b, c):
    """Constraints on a.x for index j; returns (rel_lo, lo, rel_hi, hi)."""
    if j < s:
        return ">=", b + 2 ** j - 1, "<", b + 2 ** (j + 1) - 1
    if j == s:
        return ">=", b + 2 ** s - 1, "<=", c - 2 ** s + 1
    return ">", c - 2 ** (j - s) + 1, "<=", c - 2 ** (j - 1 - s) + 1


def _position(j, s):
    """Rank of slab j along its row, from the ``lo`` side to the ``hi`` side."""
    return j if j <= s else 3 * s + 1 - j


@dataclass(frozen=True)
class SlabPiece:
    index: tuple[int, ...]
    position: tuple[int, ...]
    A: tuple[tuple[int, ...], ...]
    constraints: tuple[tuple[tuple[int, ...], str, int], ...]
    bounds: tuple[tuple[int, int], ...]  # integer range of a^(i).x on lattice points

    def contains(self, x) -> bool:
        for row, rel, rhs in self.constraints:
            v = dot(row, x)
            if not {"<=": v <= rhs, "<": v < rhs, ">=": v >= rhs, ">": v > rhs}[rel]:
                return False
        return True

    def contains_lattice(self, x) -> bool:
        return all(l <= dot(row, x) <= h for row, (l, h) in zip(self.A, self.bounds))

    @property
    def is_empty(self) -> bool:
        return any(l > h for l, h in self.bounds)

    def as_box(self) -> Box | None:
        if self.is_empty:
            return None
        return Box(self.A, tuple(l for l, _ in self.bounds), tuple(h for _, h in self.bounds))


@dataclass(frozen=True)
class Cover:
    parent: object
    pieces: tuple
    labels: tuple = ()

    def __len__(self):
        return len(self.pieces)


def partition_box(B: Box) -> Cover:
    """All ``prod(2 s_i + 1)`` slabs of ``B``, ordered by position along each row.

    The slabs cover every lattice point of ``B``.  When a row's width sits low
    in its bracket, slabs grown from the two ends of that row overlap.
    """
    n = B.n
    s = slab_exponents(B.lo, B.hi)
    last = B.A[n - 1]
    pieces = []
    for index in product(*(range(2 * si + 1) for si in s)):
        cons = []
        bounds = []
        for i, j in enumerate(index):
            rl, l, rh, h = _regime(j, s[i], B.lo[i], B.hi[i])
            cons.append((B.A[i], rl, l))
            cons.append((B.A[i], rh, h))
            bounds.append((l + 1 if rl == ">" else l, h - 1 if rh == "<" else h))
        cons.append((last, ">=", B.lo[n - 1]))
        cons.append((last, "<=", B.hi[n - 1]))
        bounds.append((B.lo[n - 1], B.hi[n - 1]))
        pos = tuple(_position(j, si) for j, si in zip(index, s))
        pieces.append(SlabPiece(index, pos, B.A, tuple(cons), tuple(bounds)))
    pieces.sort(key=lambda p: p.position)
    return Cover(B, tuple(pieces))


# ---------------------------------------------------------------- simplices

def _affine_rank(points):
    if not points:
        return -1
    p0 = points[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in points[1:]]) if len(points) > 1 else 0


@dataclass(frozen=True)
class Simplex:
    verts: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        verts = tuple(tuple(Fraction(v) for v in p) for p in self.verts)
        n = len(verts) - 1
        if n < 1 or any(len(p) != n for p in verts):
            raise DimensionError("a simplex in R^n needs n+1 points of length n")
        if det([[a - b for a, b in zip(p, verts[0])] for p in verts[1:]]) == 0:
            raise DegenerateError("simplex vertices are affinely dependent")
        object.__setattr__(self, "verts", verts)

    @property
    def n(self):
        return len(self.verts) - 1

    def facets(self) -> list[tuple[tuple[int, ...], int]]:
        """Integer ``(a, a0)`` with ``a.x <= a0``; facet i is opposite vertex i."""
        out = []
        for i, vi in enumerate(self.verts):
            others = [v for k, v in enumerate(self.verts) if k != i]
            ker = nullspace([list(v) + [Fraction(-1)] for v in others])
            g = primitive(ker[0])
            a, a0 = g[:-1], g[-1]
            if dot(a, vi) > a0:
                a, a0 = tuple(-v for v in a), -a0
            out.append((tuple(a), a0))
        return out

    def to_hpolytope(self) -> HPolytope:
        f = self.facets()
        return HPolytope(tuple(a for a, _ in f), tuple(a0 for _, a0 in f))

    def contains(self, x) -> bool:
        return all(dot(a, x) <= a0 for a, a0 in self.facets())

    def volume_times_factorial(self) -> Fraction:
        v0 = self.verts[0]
        return abs(det([[a - b for a, b in zip(p, v0)] for p in self.verts[1:]]))


def shrunken_simplex(S: Simplex, i: int) -> Simplex:
    """``conv{w_ij}`` with ``w_ij = (v_i + n v_j)/(n+1)``."""
    n = S.n
    vi = S.verts[i]
    return Simplex(tuple(tuple((a + n * b) / (n + 1) for a, b in zip(vi, vj)) for vj in S.verts))


def triangulate(P: Polyhedron) -> list[Simplex]:
    """Pulling triangulation: cone from the lexicographically smallest vertex over
    the recursively triangulated facets that avoid it."""
    H = P.to_hpolytope()
    V = vertices(H)
    n = H.n
    if _affine_rank(V) < n:
        raise DimensionError("polytope is not full-dimensional")
    facets = set()
    for row, bi in zip(H.A, H.b):
        tight = frozenset(k for k, v in enumerate(V) if dot(row, v) == bi)
        if _affine_rank([V[k] for k in sorted(tight)]) == n - 1:
            facets.add(tight)
    facets = list(facets)

    @lru_cache(maxsize=None)
    def sub_facets(face, d):
        out = set()
        for F in facets:
            g = face & F
            if g != face and _affine_rank([V[k] for k in sorted(g)]) == d - 1:
                out.add(g)
        return tuple(sorted(out, key=sorted))

    @lru_cache(maxsize=None)
    def pull(face, d):
        v0 = min(face)
        if d == 0:
            return ((v0,),)
        out = []
        for G in sub_facets(face, d):
            if v0 in G:
                continue
            for sigma in pull(G, d - 1):
                out.append((v0,) + sigma)
        return tuple(out)

    return [Simplex(tuple(V[k] for k in simp)) for simp in pull(frozenset(range(len(V))), n)]


# ---------------------------------------------------------------- simplex cover

def compositions(total: int, parts: int):
    """Integer vectors with positive entries summing to ``total``, lexicographic."""
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def _inverse_rows(M):
    d = len(M)
    A = [list(row) + [Fraction(int(i == j)) for j in range(d)] for i, row in enumerate(M)]
    for c in range(d):
        p = next(i for i in range(c, d) if A[i][c] != 0)
        A[c], A[p] = A[p], A[c]
        inv = 1 / A[c][c]
        A[c] = [v * inv for v in A[c]]
        for i in range(d):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return [row[d:] for row in A]


def _lcm_den(*xs):
    out = 1
    for x in xs:
        d = Fraction(x).denominator
        out = out * d // _gcd(out, d)
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def cover_simplex(S: Simplex, lattice: bool = False) -> Cover:
    """Parallelepipeds covering ``S``, ``|Y|`` of them anchored at each vertex.

    With ``lattice=False`` every piece is the exact real parallelepiped, rows
    scaled to clear denominators.  With ``lattice=True`` rows are primitive and
    bounds are rounded inward: the real pieces shrink but keep exactly the same
    integer points, and pieces without integer points are dropped.
    """
    n = S.n
    N = n * n - 1
    Y = list(compositions(N, n))
    pieces, labels = [], []
    for i, vi in enumerate(S.verts):
        others = [v for k, v in enumerate(S.verts) if k != i]
        # barycentric rows: u_j . (x - v_i) is the coefficient of (v_j - v_i)
        Bt = [[others[c][r] - vi[r] for c in range(n)] for r in range(n)]
        U = _inverse_rows(Bt)
        rows = []
        for j in range(n):
            a = primitive(U[j])
            base = dot(a, vi)
            span = dot(a, others[j]) - base
            rows.append((a, base, span))
        for y in Y:
            A, lo, hi = [], [], []
            skip = False
            for (a, base, span), yj in zip(rows, y):
                r_lo, r_hi = base, base + span * Fraction(yj, N)
                if lattice:
                    l, h = ceil(r_lo), floor(r_hi)
                    if l > h:
                        skip = True
                        break
                    A.append(a)
                    lo.append(l)
                    hi.append(h)
                else:
                    L = _lcm_den(r_lo, r_hi)
                    A.append(tuple(L * v for v in a))
                    lo.append(int(r_lo * L))
                    hi.append(int(r_hi * L))
            if skip:
                continue
            pieces.append(Box(tuple(A), tuple(lo), tuple(hi)))
            labels.append((i, y))
    return Cover(S, tuple(pieces), tuple(labels))


def box_vertices(B: Box) -> list[tuple[Fraction, ...]]:
    from .linalg import solve_cramer
    return [solve_cramer(B.A, corner) for corner in product(*zip(B.lo, B.hi))]


def cover_polytope(P: Polyhedron) -> Cover:
    """Lattice cover of ``P``: triangulate, then cover each simplex.

    Labels are ``(simplex index, vertex index, y)`` per piece.
    """
    simplices = triangulate(P)
    pieces, labels = [], []
    for si, S in enumerate(simplices):
        c = cover_simplex(S, lattice=True)
        pieces.extend(c.pieces)
        labels.extend((si,) + lab for lab in c.labels)
    return Cover(P, tuple(pieces), tuple(labels))
