from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from irrpoints import verify as vf
from irrpoints.bounds import piece_width_bound, simplex_cover_size, xi, eta
from irrpoints.covering import (Simplex, box_vertices, compositions, cover_polytope, cover_simplex,
                                partition_box, shrunken_simplex, slab_exponent, slab_exponents,
                                triangulate)
from irrpoints.errors import DegenerateError, DimensionError
from irrpoints.linalg import primitive
from irrpoints.polytope import Box, HPolytope, contains, enumerate_lattice, irreducible_subset

from test_polytope import boxes, pair_scan_irreducible


def shoelace2(P):
    """2 * area of a convex polygon from its vertex set."""
    from irrpoints.polytope import vertices
    V = vertices(P)
    cx = sum(v[0] for v in V) / len(V)
    cy = sum(v[1] for v in V) / len(V)
    from math import atan2
    V.sort(key=lambda v: atan2(float(v[1] - cy), float(v[0] - cx)))
    return abs(sum(V[i][0] * V[i - 1][1] - V[i - 1][0] * V[i][1] for i in range(len(V))))


def test_slab_exponent_examples():
    assert slab_exponent(19) == 3
    assert slab_exponent(0) == 0
    assert slab_exponent(3) == 1
    assert slab_exponents([0, 8], [19, 26]) == (3,)


@given(st.integers(0, 10 ** 6))
def test_slab_bracketing(w):
    s = slab_exponent(w)
    assert w <= 3 * 2 ** s - 3
    assert s == 0 or 3 * Fraction(2) ** (s - 1) - 3 < w


def test_skew_box_partition(skew_box):
    c = partition_box(skew_box)
    assert len(c) == 7
    irr = irreducible_subset(enumerate_lattice(skew_box))
    counts = [sum(1 for x in irr if q.contains_lattice(x)) for q in c.pieces]
    assert counts == [2, 1, 0, 2, 0, 1, 2]
    assert [q.position for q in c.pieces] == [(i,) for i in range(7)]
    # the real-set and lattice membership tests coincide on lattice points
    for q in c.pieces:
        for x in enumerate_lattice(skew_box):
            assert q.contains(x) == q.contains_lattice(x)


def test_degenerate_box():
    B = Box([[2, 1], [1, 1]], [3, 1], [3, 1])
    c = partition_box(B)
    assert len(c) == 1
    assert c.pieces[0].as_box() == B


@given(boxes(width=40))
def test_two_irreducible_per_piece(B):
    M = enumerate_lattice(B)
    if len(M) > 600:
        return
    irr = pair_scan_irreducible(list(M))
    c = partition_box(B)
    want = 1
    for s in slab_exponents(B.lo, B.hi):
        want *= 2 * s + 1
    assert len(c) == want
    for q in c.pieces:
        assert sum(1 for x in irr if q.contains_lattice(x)) <= 2
    for x in M:
        assert any(q.contains_lattice(x) for q in c.pieces)


@given(boxes(width=40))
def test_shift_reflection_witness(B):
    assert vf.chk_shift_reflection(vf._BoxCtx({"A": [list(r) for r in B.A], "lo": list(B.lo),
                                                "hi": list(B.hi)})) == []


def test_triangulation_counts(triangle, skew_box):
    assert len(triangulate(triangle)) == 1
    sq = Box([[1, 0], [0, 1]], [0, 0], [1, 1])
    assert len(triangulate(sq)) == 2 <= factorial(2) * xi(2, 4)
    cube = Box([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [0, 0, 0], [1, 1, 1])
    T = triangulate(cube)
    assert len(T) == 6 <= factorial(3) * xi(3, 6)
    assert sum(s.volume_times_factorial() for s in T) == 6
    T = triangulate(skew_box)
    assert len(T) == 2
    assert min(T[0].verts) == (Fraction(8, 11), Fraction(24, 11))


def test_triangulation_lower_dimensional():
    flat = HPolytope([[1, 0], [-1, 0], [0, 1], [0, -1]], [1, 0, 0, 0])
    with pytest.raises(DimensionError):
        triangulate(flat)


@given(st.integers(0, 10 ** 6))
def test_triangulation_regular(seed):
    import random
    inst = vf.random_polytope(random.Random(seed))
    ctx = vf._PolyCtx(inst)
    assert vf.chk_triangulation(ctx) == []
    assert sum(s.volume_times_factorial() for s in ctx.simplices) == shoelace2(ctx.P)
    assert len(ctx.simplices) <= factorial(2) * xi(2, ctx.P.m)


def test_compositions():
    assert list(compositions(3, 2)) == [(1, 2), (2, 1)]
    assert len(list(compositions(8, 3))) == comb(7, 2)
    assert simplex_cover_size(2) == 6 and simplex_cover_size(3) == 84


def test_standard_simplex_pieces():
    S = Simplex(((0, 0), (3, 0), (0, 3)))
    c = cover_simplex(S)
    assert len(c) == 6
    mine = [B for lab, B in zip(c.labels, c.pieces) if lab[0] == 0]
    assert mine == [Box([[1, 0], [0, 1]], [0, 0], [1, 2]), Box([[1, 0], [0, 1]], [0, 0], [2, 1])]


def test_degenerate_simplex():
    with pytest.raises(DegenerateError):
        Simplex(((0, 0), (1, 1), (2, 2)))


@st.composite
def simplices(draw, n=None):
    n = n or draw(st.sampled_from([2, 3]))
    V = draw(st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n + 1,
                      max_size=n + 1))
    try:
        return Simplex(tuple(tuple(v) for v in V))
    except DegenerateError:
        return None


@settings(max_examples=15)
@given(simplices())
def test_cover_simplex_properties(S):
    if S is None:
        return
    n = S.n
    c = cover_simplex(S)
    assert len(c) == simplex_cover_size(n)
    normals = {primitive(a) for a, _ in S.facets()}
    normals |= {tuple(-v for v in a) for a in normals}
    for B in c.pieces:
        assert all(primitive(r) in normals for r in B.A)
        for v in box_vertices(B):
            assert S.contains(v)
    ctx = vf._SimplexCtx({"verts": [list(map(int, v)) for v in S.verts]})
    assert vf.chk_shrunken_covered(ctx) == []


def test_shrunken_simplex():
    S = Simplex(((0, 0), (3, 0), (0, 3)))
    S0 = shrunken_simplex(S, 0)
    assert S0.verts == ((0, 0), (2, 0), (0, 2))


def test_cover_polytope_triangle(triangle):
    c = cover_polytope(triangle)
    assert 0 < len(c) <= eta(2, 3) == 36
    covered = set()
    for B in c.pieces:
        for x in enumerate_lattice(B):
            assert contains(triangle, x)
            covered.add(x)
    assert covered == set(enumerate_lattice(triangle))


def test_cover_polytope_unit_square():
    sq = HPolytope([[1, 0], [-1, 0], [0, 1], [0, -1]], [1, 0, 1, 0])
    c = cover_polytope(sq)
    for B in c.pieces:
        for v in box_vertices(B):
            assert contains(sq, v)
    assert {x for B in c.pieces for x in enumerate_lattice(B)} == set(enumerate_lattice(sq))


@given(st.integers(0, 10 ** 6))
def test_cover_polytope_random(seed):
    import random
    ctx = vf._PolyCtx(vf.random_polytope(random.Random(seed)))
    assert vf.chk_cover_lattice(ctx) == []
    assert len(ctx.cover) <= eta(2, ctx.P.m)
    wb = piece_width_bound(2, ctx.P.alpha, ctx.P.beta)
    assert all(max(B.widths()) <= wb for B in ctx.cover.pieces)
