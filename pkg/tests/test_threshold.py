import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from irrpoints import verify as vf
from irrpoints.bounds import grid_coefficient_bounds, tprime_teaching_bound
from irrpoints.errors import CapacityError, DomainError
from irrpoints.threshold import (ThresholdFn, cone_generators, essential, eval_fn, grid,
                                 has_separation_property, in_cone, in_F, in_tprime,
                                 irr_connection_check, is_separable, mask_to_fn, rationalize,
                                 sep_cone, sigma, teaching_set, threshold_functions)

SAMPLE_FN = ThresholdFn(2, 20, 103, (5, 9))


def brute_threshold_masks(n, k):
    pts = grid(n, k)
    return {m for m in range(1 << len(pts))
            if is_separable({p: (m >> i) & 1 for i, p in enumerate(pts)}, n, k) is not None}


def brute_teaching(f):
    """Essential points by definition: flip and test separability."""
    vals = dict(zip(grid(f.n, f.k), f.values()))
    out = []
    for z in grid(f.n, f.k):
        flipped = dict(vals)
        flipped[z] ^= 1
        if is_separable(flipped, f.n, f.k) is not None:
            out.append(z)
    return out


# ---------------------------------------------------------------- examples

def test_eval():
    assert SAMPLE_FN((17, 2)) == 0 and SAMPLE_FN((19, 1)) == 1
    zero = ThresholdFn(2, 4, 0, (0, 0))
    assert set(zero.values()) == {0}
    with pytest.raises(DomainError):
        eval_fn(SAMPLE_FN, (20, 0))
    with pytest.raises(DomainError):
        ThresholdFn(2, 1, 0, (1, 1))


def test_is_separable_examples():
    xor = {(0, 0): 0, (1, 1): 0, (0, 1): 1, (1, 0): 1}
    assert is_separable(xor) is None
    f = is_separable(dict(zip(grid(2, 20), SAMPLE_FN.values())))
    assert f is not None and f.values() == SAMPLE_FN.values()
    ones = is_separable({p: 1 for p in grid(2, 3)})
    assert ones is not None and ones.classes()[0] == []
    with pytest.raises(DomainError):
        is_separable({(0, 0): 1, (1, 1): 0}, 2, 2)


def test_essential_examples():
    assert essential(SAMPLE_FN, (8, 7)) and essential(SAMPLE_FN, (17, 2))
    assert not essential(SAMPLE_FN, (0, 0))
    f = ThresholdFn(1, 5, 2, (1,))
    assert [z for (z,) in grid(1, 5) if essential(f, (z,))] == [2, 3]


def test_sample_fn_teaching_set():
    T = teaching_set(SAMPLE_FN)
    assert T.t0 == ((8, 7), (17, 2)) and T.t1 == ((1, 11), (19, 1))
    assert len(T) == 4
    assert T.to_json() == {"t0": [[8, 7], [17, 2]], "t1": [[1, 11], [19, 1]]}


def test_constant_functions_by_definition():
    for k in (2, 3, 4):
        for f in (ThresholdFn(2, k, 0, (0, 0)), ThresholdFn(2, k, -1, (0, 0))):
            assert list(teaching_set(f).points) == brute_teaching(f)
            assert set(teaching_set(f).points) == {(0, 0), (0, k - 1), (k - 1, 0), (k - 1, k - 1)}


def test_n1_teaching_set():
    T = teaching_set(ThresholdFn(1, 5, 2, (1,)))
    assert T.t0 == ((2,),) and T.t1 == ((3,),)


@settings(max_examples=30)
@given(st.integers(2, 5), st.integers(-6, 6), st.integers(-6, 6), st.integers(-20, 30))
def test_teaching_set_matches_definition(k, a1, a2, a0):
    f = ThresholdFn(2, k, a0, (a1, a2))
    T = teaching_set(f)
    assert list(T.points) == brute_teaching(f)
    M0, M1 = f.classes()
    assert set(T.t0) <= set(M0) and set(T.t1) <= set(M1)


# ---------------------------------------------------------------- enumeration and sigma

@pytest.mark.parametrize("n,k", [(2, 2), (2, 3), (3, 2), (1, 6)])
def test_enumerator_matches_brute_force(n, k):
    assert set(threshold_functions(n, k)) == brute_threshold_masks(n, k)


def test_boolean_counts():
    assert len(threshold_functions(2, 2)) == 14
    assert len(threshold_functions(3, 2)) == 104


def test_sigma_values():
    assert [sigma(2, k) for k in range(2, 7)] == [4] * 5
    assert [sigma(1, k) for k in range(2, 11)] == [2] * 9
    assert sigma(3, 2) == 8


def test_sigma_guard():
    with pytest.raises(CapacityError):
        sigma(3, 5)
    with pytest.raises(CapacityError):
        sigma(4, 2)


def test_mask_round_trip():
    for m in threshold_functions(2, 3):
        assert mask_to_fn(m, 2, 3).mask() == m


# ---------------------------------------------------------------- F_0, F_1 and separation

def test_in_F_basics():
    M0, M1 = SAMPLE_FN.classes()
    assert all(in_F(SAMPLE_FN, 0, x) for x in M0[::17])
    assert all(in_F(SAMPLE_FN, 1, x) for x in M1[::17])
    assert not in_F(ThresholdFn(2, 3, -1, (0, 0)), 0, (0, 0))  # empty M_0
    with pytest.raises(ValueError):
        in_F(SAMPLE_FN, 2, (0, 0))


def test_F_union_covers_orthant_for_tprime():
    rng = random.Random(3)
    for _ in range(5):
        f = ThresholdFn.from_json(vf.random_tprime(rng, k=rng.randint(3, 8)))
        assert in_tprime(f)
        for x in product(range(f.k + 3), repeat=2):
            assert in_F(f, 0, x) or in_F(f, 1, x)


def test_reduced_generators_span_same_cone():
    f = ThresholdFn(2, 6, 11, (2, 3))
    full = cone_generators(f, reduced=False)
    red = cone_generators(f)
    assert set(red) <= set(full)
    assert all(in_cone(red, g) for g in full)
    assert (1, 0) in sep_cone(f)


def test_separation_property_examples():
    assert has_separation_property([(0, 2), (1, 0)])
    assert not has_separation_property([(0, 0), (1, 1)])
    assert has_separation_property([(3, 4)])
    with pytest.raises(DomainError):
        has_separation_property([(0, -1)])


@pytest.mark.parametrize("seed", range(3))
def test_reflection_harness(seed):
    rng = random.Random(seed)
    for _ in range(8):
        ctx = vf._FnCtx(vf.random_tprime(rng))
        assert vf.chk_separation(ctx) == []
        assert vf.chk_reflection_outside_F(ctx) == []
        b = tprime_teaching_bound(2, ctx.f.k)
        assert len(ctx.T.t0) <= b and len(ctx.T.t1) <= b


@pytest.mark.parametrize("k", range(2, 7))
def test_uniqueness_and_vertices_exhaustive(k):
    ctx = vf._Ctx({"n": 2, "k": k})
    assert vf.chk_teaching_exhaustive(ctx) == []
    assert vf.chk_vertices_of_F(ctx) == []


def test_teaching_set_matches_flip_scan():
    assert vf.chk_teaching_matches_scan(vf._Ctx({"n": 2, "k": 5})) == []


# ---------------------------------------------------------------- rationalize

def _same_dichotomy(a, a0, b, b0, k):
    return all((a[0] * x + a[1] * y <= a0) == (b[0] * x + b[1] * y <= b0)
               for x in range(k) for y in range(k))


def test_rationalize_examples():
    for a, a0, k in [((Fraction(1, 3), Fraction(1, 7)), 1, 3), ((1, 1), 1, 2), ((5, 9), 103, 20)]:
        b, b0 = rationalize(a, a0, 2, k)
        assert _same_dichotomy(a, a0, b, b0, k)
        ab, bb = grid_coefficient_bounds(2, k)
        assert max(map(abs, b)) <= ab and abs(b0) <= bb
    assert rationalize((5, 9), 103, 2, 20) == ((5, 9), 103)


@settings(max_examples=40)
@given(st.integers(2, 12), st.fractions(-5, 5, max_denominator=9), st.fractions(-5, 5, max_denominator=9),
       st.fractions(-30, 30, max_denominator=9))
def test_rationalize_property(k, a1, a2, a0):
    b, b0 = rationalize((a1, a2), a0, 2, k)
    assert _same_dichotomy((a1, a2), a0, b, b0, k)
    ab, bb = grid_coefficient_bounds(2, k)
    assert max(map(abs, b)) <= ab and abs(b0) <= bb


def test_rationalize_three_dims():
    a, a0 = (Fraction(2, 3), Fraction(-1, 5), Fraction(1, 2)), Fraction(7, 4)
    b, b0 = rationalize(a, a0, 3, 3)
    for x in grid(3, 3):
        assert (sum(p * q for p, q in zip(a, x)) <= a0) == (sum(p * q for p, q in zip(b, x)) <= b0)
    ab, bb = grid_coefficient_bounds(3, 3)
    assert max(map(abs, b)) <= ab and abs(b0) <= bb


# ---------------------------------------------------------------- slice check

def test_irr_connection_sample_fn():
    r = irr_connection_check(SAMPLE_FN)
    assert r.ok and r.case == "slice" and r.sizes == (2, 2)
    assert r.normalized.a == (9, 5)


def test_irr_connection_constant():
    r = irr_connection_check(ThresholdFn(2, 5, -1, (0, 0)))
    assert r.ok and r.case == "constant" and r.sizes[0] == 0


def test_irr_connection_batch():
    rng = random.Random(11)
    cases = set()
    for _ in range(20):
        k = rng.randint(2, 15)
        f = ThresholdFn(2, k, rng.randint(-30, 80), (rng.randint(-9, 9), rng.randint(-9, 9)))
        r = irr_connection_check(f)
        assert r.ok, r.to_json()
        cases.add(r.case)
    assert "slice" in cases


def test_irr_connection_guard():
    with pytest.raises(CapacityError):
        irr_connection_check(ThresholdFn(4, 2, 1, (1, 1, 1, 1)))
