import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from irrpoints import verify as vf
from irrpoints._certified import sqrt_pow_upper
from irrpoints.bounds import (BoundInputs, BoundReport, binom, box_bound, decimal_upper, eta,
                              facet_coefficient_bound, grid_bound, grid_coefficient_bounds,
                              polytope_bound, simplex_cover_size, tprime_teaching_bound,
                              vertex_coordinate_bounds, xi)
from irrpoints.polytope import irreducible_points


def float_eq13(n, m, a, b):
    big = (2 / 3) * a ** (n * n) * b ** n * math.sqrt(n) ** (n * n + 2 * n + 2)
    return 2 * eta(n, m) * (3 + 2 * math.log2(1 + big)) ** (n - 1)


def test_binomial_conventions():
    assert binom(3, 5) == 0 and binom(-1, 0) == 0 and binom(4, -1) == 0 and binom(5, 2) == 10


def test_xi_eta_examples():
    assert (xi(2, 3), xi(2, 4), xi(3, 4)) == (3, 4, 4)
    assert (eta(2, 3), eta(2, 4), eta(3, 4)) == (36, 48, 2016)
    assert simplex_cover_size(3) == 84


def test_box_bound_examples(skew_box):
    b = box_bound(skew_box.lo, skew_box.hi)
    assert b >= 2 * (3 + 2 * math.log2(22 / 3)) - 1e-12
    assert float(b) == pytest.approx(17.4978764716645, rel=1e-12)
    assert b >= len(irreducible_points(skew_box)) == 8
    assert box_bound([0, 0], [0, 5]) == 6
    assert box_bound([4], [9]) == 2


def test_triangle_polytope_bound(triangle):
    inp = BoundInputs.from_polytope(triangle)
    assert (inp.n, inp.m, inp.alpha, inp.beta) == (2, 3, 2, 2)
    b = polytope_bound(inp)
    # the formula gives 2 * eta_2(3) = 72 times the log factor
    assert float(b) == pytest.approx(float_eq13(2, 3, 2, 2), rel=1e-12)
    assert float(b) == pytest.approx(72 * (3 + 2 * math.log2(1 + (2 / 3) * 2 ** 4 * 2 ** 2 * 2 ** 5)),
                                     rel=1e-12)
    assert b >= 4


def test_polytope_bound_domain():
    with pytest.raises(ValueError):
        polytope_bound(BoundInputs(2, 3, 0, 5))


@given(st.integers(1, 8), st.integers(1, 8), st.integers(1, 8), st.integers(1, 8))
def test_polytope_bound_monotone(a1, a2, b1, b2):
    lo = polytope_bound(BoundInputs(2, 4, min(a1, a2), min(b1, b2)))
    hi = polytope_bound(BoundInputs(2, 4, max(a1, a2), max(b1, b2)))
    assert lo <= hi


def test_grid_coefficient_examples():
    a, b = grid_coefficient_bounds(2, 20)
    assert float(a) == pytest.approx(19 * 3 ** 1.5 / 4, rel=1e-12) and a >= Fraction(2468, 100)
    assert b == 722
    a, _ = grid_coefficient_bounds(2, 2)
    assert float(a) == pytest.approx(3 ** 1.5 / 4, rel=1e-12)


def test_tprime_bound():
    assert tprime_teaching_bound(2, 7) == 4
    assert float(tprime_teaching_bound(3, 7)) == pytest.approx(3 * (1 + math.log2(3)) * 4, rel=1e-12)


@given(st.integers(1, 6), st.integers(1, 40))
def test_sqrt_pow_upper_is_upper(n, e):
    u = sqrt_pow_upper(n, e)
    assert u * u >= n ** e
    assert float(u) == pytest.approx(math.sqrt(n) ** e, rel=1e-12)


@given(st.lists(st.integers(0, 10 ** 6), min_size=1, max_size=4))
def test_box_bound_certified_against_float(widths):
    lo = [0] * len(widths)
    b = box_bound(lo, widths)
    f = 2.0
    for w in widths[:-1]:
        f *= 3 + 2 * math.log2(1 + w / 3)
    assert float(b) == pytest.approx(f, rel=1e-12)
    assert b >= Fraction(f) * (1 - Fraction(1, 10 ** 12))


def test_vertex_coordinate_bounds_values():
    q, p = vertex_coordinate_bounds(2, 3, 5)
    assert q == 18 and p == 30
    assert float(facet_coefficient_bound(2, 2, 2)) == pytest.approx(2 ** 3 * 2 * 2 ** 3, rel=1e-12)


@pytest.mark.parametrize("seed", range(4))
def test_dominance_suites(seed):
    rep = vf.verify("bounds", trials=15, seed=seed)
    assert rep.passed, rep.to_json()


def test_report_json(skew_box):
    r = BoundReport("box", {"lo": [0, 8], "hi": [19, 26]}, box_bound(skew_box.lo, skew_box.hi), 8)
    d = r.to_json()
    assert d["bound_value"].startswith("17.4978764716") and d["actual_count"] == 8
    assert r.holds and Fraction(d["slack"]) > 9
    assert decimal_upper(Fraction(1, 3), 5) == "0.33334"
