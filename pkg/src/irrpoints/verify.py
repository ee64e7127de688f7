"""Randomised property harnesses with replayable counterexample records.

Each suite generates JSON-serialisable instances from a seeded RNG and runs a
list of named checks on them.  A failing check yields a record
``{"suite", "property", "instance", "detail"}``; feeding the record to
:func:`recheck` reruns exactly that check on exactly that instance.
"""
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import lcm

from . import bounds as bd
from .covering import (Simplex, box_vertices, cover_polytope, cover_simplex, partition_box,
                       shrunken_simplex, slab_exponents, triangulate)
from .errors import DomainError
from .linalg import det, dot
from .lp import lp_feasible
from .polytope import (Box, HPolytope, contains, enumerate_lattice, irreducible_subset,
                       recession_direction, vertices)
from .threshold import (ThresholdFn, grid, has_separation_property, in_F, mask_to_fn, sigma,
                        teaching_mask, teaching_set, threshold_functions, tprime_teaching_bound)

SUITES = ("box-partition", "cover", "bounds", "teaching")


# ---------------------------------------------------------------- instances

def random_box(rng: random.Random, n=None, entry=10, width=60, max_points=60000) -> dict:
    """Integer box with a non-singular matrix and a bounded lattice-point count."""
    n = n or rng.choice((2, 3))
    while True:
        A = [[rng.randint(-entry, entry) for _ in range(n)] for _ in range(n)]
        d = abs(det(A))
        if d == 0:
            continue
        w = [rng.randint(0, width) for _ in range(n)]
        vol = 1
        for wi in w:
            vol *= wi + 1
        if vol / d > max_points:
            continue
        lo = [rng.randint(-width, width) for _ in range(n)]
        return {"A": A, "lo": lo, "hi": [l + wi for l, wi in zip(lo, w)]}


def random_simplex(rng: random.Random, n=None, coord=6) -> dict:
    n = n or rng.choice((2, 3))
    while True:
        V = [[rng.randint(-coord, coord) for _ in range(n)] for _ in range(n + 1)]
        if det([[a - b for a, b in zip(p, V[0])] for p in V[1:]]) != 0:
            return {"verts": V}


def random_polytope(rng: random.Random, n=2, alpha=8, beta=8) -> dict:
    """Bounded full-dimensional {Ax <= b} with |a_ij| <= alpha, |b_i| <= beta."""
    while True:
        m = rng.randint(n + 1, n + 4)
        A = [[rng.randint(-alpha, alpha) for _ in range(n)] for _ in range(m)]
        if any(all(v == 0 for v in row) for row in A):
            continue
        b = [rng.randint(0 if i == 0 else -beta, beta) for i in range(m)]
        H = HPolytope(A, b)
        if recession_direction(H) is not None:
            continue
        # full-dimensional: some point satisfies every row strictly
        if not lp_feasible([(row, "<", bi) for row, bi in zip(A, b)], dim=n).feasible:
            continue
        return {"A": A, "b": b}


def random_tprime(rng: random.Random, k=None, n=2, amax=9) -> dict:
    """Integer inequality with 0 < a0 < a_j (k-1) for every j."""
    while True:
        kk = k or rng.randint(3, 12)
        a = [rng.randint(1, amax) for _ in range(n)]
        hi = min(a) * (kk - 1)
        if hi >= 2:
            return {"n": n, "k": kk, "a0": rng.randint(1, hi - 1), "a": a}


def random_grid_section(rng: random.Random, kmax=30, coef=20) -> dict:
    """One halfplane a.x <= a0 cut down to the grid E_k^2."""
    k = rng.randint(2, kmax)
    while True:
        a = [rng.randint(-coef, coef) for _ in range(2)]
        if any(a):
            break
    return {"k": k, "a": a, "a0": rng.randint(-coef * k, coef * k)}


# ---------------------------------------------------------------- lazy context

class _Ctx:
    def __init__(self, inst):
        self.inst = inst


class _BoxCtx(_Ctx):
    @cached_property
    def box(self):
        i = self.inst
        return Box(i["A"], i["lo"], i["hi"])

    @cached_property
    def lattice(self):
        return enumerate_lattice(self.box)

    @cached_property
    def irr(self):
        return irreducible_subset(self.lattice)

    @cached_property
    def cover(self):
        return partition_box(self.box)


class _SimplexCtx(_Ctx):
    @cached_property
    def simplex(self):
        return Simplex(tuple(tuple(v) for v in self.inst["verts"]))

    @cached_property
    def cover(self):
        return cover_simplex(self.simplex)


class _PolyCtx(_Ctx):
    @cached_property
    def P(self):
        return HPolytope(self.inst["A"], self.inst["b"])

    @cached_property
    def lattice(self):
        return enumerate_lattice(self.P)

    @cached_property
    def irr(self):
        return irreducible_subset(self.lattice)

    @cached_property
    def cover(self):
        return cover_polytope(self.P)

    @cached_property
    def simplices(self):
        return triangulate(self.P)

    @cached_property
    def inputs(self):
        return bd.BoundInputs.from_polytope(self.P)


class _GridCtx(_Ctx):
    @cached_property
    def P(self):
        k = self.inst["k"]
        A = [self.inst["a"], [1, 0], [0, 1], [-1, 0], [0, -1]]
        return HPolytope(A, [self.inst["a0"], k - 1, k - 1, 0, 0])


class _FnCtx(_Ctx):
    @cached_property
    def f(self):
        return ThresholdFn.from_json(self.inst)

    @cached_property
    def T(self):
        return teaching_set(self.f)


def _pts(xs):
    return [[str(v) if isinstance(v, Fraction) else v for v in p] for p in xs]


# ---------------------------------------------------------------- box checks

def _piece_counts(c: _BoxCtx):
    return [sum(1 for x in c.irr if q.contains_lattice(x)) for q in c.cover.pieces]


def chk_piece_at_most_two(c: _BoxCtx):
    bad = [(list(q.index), n) for q, n in zip(c.cover.pieces, _piece_counts(c)) if n > 2]
    return [{"pieces": bad}] if bad else []


def chk_pieces_cover_lattice(c: _BoxCtx):
    # slabs from the two ends of a row may overlap, so only coverage is required
    for x in c.lattice:
        if not any(q.contains_lattice(x) for q in c.cover.pieces):
            return [{"point": list(x)}]
    return []


def chk_piece_count(c: _BoxCtx):
    want = 1
    for s in slab_exponents(c.box.lo, c.box.hi):
        want *= 2 * s + 1
    return [] if len(c.cover) == want else [{"pieces": len(c.cover), "expected": want}]


def chk_slab_bracketing(c: _BoxCtx):
    out = []
    for (l, h), s in zip(zip(c.box.lo, c.box.hi), slab_exponents(c.box.lo, c.box.hi)):
        w = h - l
        lower_ok = s == 0 or 3 * Fraction(2) ** (s - 1) - 3 < w
        if not (lower_ok and w <= 3 * 2 ** s - 3):
            out.append({"width": w, "s": s})
    return out


def chk_shift_reflection(c: _BoxCtx, rng=None, cap=40):
    """Three lattice points of one piece: 2y-x or 2y-z stays in the box."""
    rng = rng or random.Random(0)
    last = c.box.A[-1]
    for q in c.cover.pieces:
        pts = [x for x in c.lattice if q.contains_lattice(x)]
        if len(pts) < 3:
            continue
        triples = list(combinations(pts, 3)) if len(pts) <= 12 else \
            [tuple(rng.sample(pts, 3)) for _ in range(cap)]
        for t in triples:
            x, y, z = sorted(t, key=lambda p: (dot(last, p), p))
            u = tuple(2 * a - b for a, b in zip(y, x))
            v = tuple(2 * a - b for a, b in zip(y, z))
            if not (contains(c.box, u) or contains(c.box, v)):
                return [{"piece": list(q.index), "triple": [list(x), list(y), list(z)]}]
    return []


def chk_box_bound(c: _BoxCtx):
    b = bd.box_bound(c.box.lo, c.box.hi)
    return [] if len(c.irr) <= b else [{"bound": bd.decimal_upper(b), "actual": len(c.irr)}]


def chk_grid_bound(c: _GridCtx):
    b = bd.grid_bound(2, c.inst["k"], 1)
    actual = len(irreducible_subset(enumerate_lattice(c.P)))
    return [] if actual <= b else [{"bound": bd.decimal_upper(b), "actual": actual}]


# ---------------------------------------------------------------- simplex checks

def chk_cover_size(c: _SimplexCtx):
    n = c.simplex.n
    want = bd.simplex_cover_size(n)
    return [] if len(c.cover) <= want else [{"pieces": len(c.cover), "limit": want}]


def chk_piece_vertices_inside(c: _SimplexCtx):
    for lab, B in zip(c.cover.labels, c.cover.pieces):
        for v in box_vertices(B):
            if not c.simplex.contains(v):
                return [{"piece": [lab[0], list(lab[1])], "vertex": _pts([v])[0]}]
    return []


def _shrunken_samples(S_i: Simplex, rng):
    pts = list(S_i.verts)
    try:
        pts += list(enumerate_lattice(S_i.to_hpolytope()))
    except DomainError:
        pass
    n = S_i.n
    for _ in range(8):
        w = [Fraction(rng.randint(1, 9)) for _ in range(n + 1)]
        tot = sum(w)
        pts.append(tuple(sum(wi * v[c] for wi, v in zip(w, S_i.verts)) / tot for c in range(n)))
    return pts


def chk_shrunken_covered(c: _SimplexCtx, rng=None):
    rng = rng or random.Random(0)
    S = c.simplex
    for i in range(S.n + 1):
        mine = [B for lab, B in zip(c.cover.labels, c.cover.pieces) if lab[0] == i]
        for x in _shrunken_samples(shrunken_simplex(S, i), rng):
            if not any(contains(B, x) for B in mine):
                return [{"vertex": i, "point": _pts([x])[0]}]
    return []


# ---------------------------------------------------------------- polytope checks

def chk_eta(c: _PolyCtx):
    e = bd.eta(c.P.n, c.P.m)
    return [] if len(c.cover) <= e else [{"pieces": len(c.cover), "eta": e}]


def chk_cover_lattice(c: _PolyCtx):
    inside = set(c.lattice)
    covered = set()
    for B in c.cover.pieces:
        for x in enumerate_lattice(B):
            if x not in inside:
                return [{"outside": list(x)}]
            covered.add(x)
    missing = sorted(inside - covered)
    return [{"uncovered": [list(x) for x in missing[:5]]}] if missing else []


def chk_polytope_bound(c: _PolyCtx):
    b = bd.polytope_bound(c.inputs)
    return [] if len(c.irr) <= b else [{"bound": bd.decimal_upper(b), "actual": len(c.irr)}]


def chk_vertex_bounds(c: _PolyCtx):
    qb, pb = bd.vertex_coordinate_bounds(c.P.n, c.P.alpha, c.P.beta)
    for v in vertices(c.P):
        q = lcm(*(Fraction(x).denominator for x in v))
        if q > qb or any(abs(x * q) > pb for x in v):
            return [{"vertex": _pts([v])[0]}]
    return []


def chk_facet_bounds(c: _PolyCtx):
    n, a, b = c.P.n, c.P.alpha, c.P.beta
    ab, rb = bd.facet_coefficient_bound(n, a, b), bd.facet_rhs_bound(n, a, b)
    for S in c.simplices:
        for row, r in S.facets():
            if max(abs(v) for v in row) > ab or abs(r) > rb:
                return [{"facet": [list(row), r]}]
    return []


def chk_piece_widths(c: _PolyCtx):
    wb = bd.piece_width_bound(c.P.n, c.P.alpha, c.P.beta)
    for B in c.cover.pieces:
        if max(B.widths()) > wb:
            return [{"widths": list(B.widths())}]
    return []


def _proper_pair(S1: Simplex, S2: Simplex) -> bool:
    """A hyperplane weakly separating S1 and S2 whose contact is exactly the common vertices."""
    n = S1.n
    common = set(S1.verts) & set(S2.verts)
    rows = []
    for v in S1.verts:
        rows.append((list(v) + [-1], "=" if v in common else "<", 0))
    for v in S2.verts:
        if v not in common:
            rows.append((list(v) + [-1], ">", 0))
    return lp_feasible(rows, dim=n + 1).feasible


def chk_triangulation(c: _PolyCtx):
    S = c.simplices
    V = set(vertices(c.P))
    for s in S:
        if not set(s.verts) <= V:
            return [{"simplex": _pts(s.verts)}]
    for s, t in combinations(S, 2):
        if not _proper_pair(s, t):
            return [{"pair": [_pts(s.verts), _pts(t.verts)]}]
    # volumes add up to P's volume (checked through a second fan from the centroid)
    total = sum(s.volume_times_factorial() for s in S)
    ref = _fan_volume(c.P)
    return [] if total == ref else [{"volume": str(total), "expected": str(ref)}]


def _fan_volume(P) -> Fraction:
    """n! vol(P) summed over facets as cones from an interior point (n = 2 or 3)."""
    V = vertices(P)
    n = P.n
    ctr = tuple(sum(v[i] for v in V) / len(V) for i in range(n))
    tot = Fraction(0)
    faces = {}
    for row, bi in zip(P.A, P.b):
        F = tuple(v for v in V if dot(row, v) == bi)
        if len(F) >= n:
            faces.setdefault(F, row)
    for F, row in faces.items():
        if n == 2:
            if len(F) == 2:
                tot += abs(det([[a - b for a, b in zip(p, ctr)] for p in F]))
        else:
            # order the facet polygon around its centroid, then fan
            fc = tuple(sum(v[i] for v in F) / len(F) for i in range(n))
            for p, q in _polygon_edges(F, row):
                tot += abs(det([[a - b for a, b in zip(x, ctr)] for x in (fc, p, q)]))
    return tot


def _polygon_edges(F, normal):
    """Edges of the convex polygon F lying in a plane with the given normal."""
    out = []
    for p, q in combinations(F, 2):
        e = [a - b for a, b in zip(q, p)]
        w = [normal[1] * e[2] - normal[2] * e[1], normal[2] * e[0] - normal[0] * e[2],
             normal[0] * e[1] - normal[1] * e[0]]
        s = [dot(w, [a - b for a, b in zip(r, p)]) for r in F]
        if all(v >= 0 for v in s) or all(v <= 0 for v in s):
            out.append((p, q))
    return out


# ---------------------------------------------------------------- threshold checks

def chk_separation(c: _FnCtx):
    out = []
    for nu, Tn in enumerate((c.T.t0, c.T.t1)):
        if not has_separation_property(Tn):
            out.append({"nu": nu, "T": _pts(Tn)})
    return out


def chk_reflection_outside_F(c: _FnCtx):
    for Tn in (c.T.t0, c.T.t1):
        for x in Tn:
            for y in Tn:
                if x == y:
                    continue
                z = tuple(2 * a - b for a, b in zip(x, y))
                for nu in (0, 1):
                    if in_F(c.f, nu, z):
                        return [{"x": list(x), "y": list(y), "nu": nu}]
    return []


def chk_tprime_bound(c: _FnCtx):
    b = tprime_teaching_bound(c.f.n, c.f.k)
    bad = [len(t) for t in (c.T.t0, c.T.t1) if len(t) > b]
    return [{"sizes": bad, "bound": bd.decimal_upper(b)}] if bad else []


def chk_teaching_exhaustive(c: _Ctx):
    """Every function on E_k^2: its essential set teaches it, and no point is spare."""
    k = c.inst["k"]
    n = c.inst.get("n", 2)
    funcs = threshold_functions(n, k)
    fs = frozenset(funcs)
    N = k ** n
    for f in funcs:
        T = teaching_mask(f, fs, N)
        for g in funcs:
            if g != f and not (g ^ f) & T:
                return [{"f": f, "g": g, "reason": "not teaching"}]
        for i in range(N):
            if T >> i & 1 and (f ^ (1 << i)) not in fs:
                return [{"f": f, "point": i, "reason": "point not essential"}]
    return []


def chk_teaching_matches_scan(c: _Ctx):
    """teaching_set on each function equals the flip-lookup essential set."""
    k = c.inst["k"]
    n = c.inst.get("n", 2)
    funcs = threshold_functions(n, k)
    fs = frozenset(funcs)
    pts = grid(n, k)
    for f in funcs:
        T = teaching_mask(f, fs, len(pts))
        got = teaching_set(mask_to_fn(f, n, k))
        want = tuple(p for i, p in enumerate(pts) if T >> i & 1)
        if got.points != tuple(sorted(want)):
            return [{"f": f, "got": _pts(got.points), "want": _pts(want)}]
    return []


def chk_vertices_of_F(c: _Ctx):
    """Each teaching point is a vertex of F_nu: not reachable without itself."""
    k = c.inst["k"]
    n = c.inst.get("n", 2)
    for m in threshold_functions(n, k):
        f = mask_to_fn(m, n, k)
        T = teaching_set(f)
        M0, M1 = f.classes()
        if not M0 or not M1:
            continue
        for nu, Tn in enumerate((T.t0, T.t1)):
            for t in Tn:
                if in_F(f, nu, t, exclude=t):
                    return [{"f": f.to_json(), "nu": nu, "t": list(t)}]
    return []


def chk_sigma(c: _Ctx):
    k = c.inst["k"]
    s = sigma(2, k)
    return [] if s == 4 else [{"sigma": s}]


# ---------------------------------------------------------------- registry

CHECKS = {
    "box-partition": (_BoxCtx, {
        "piece_count": chk_piece_count,
        "pieces_cover_lattice": chk_pieces_cover_lattice,
        "at_most_two_irreducible_per_piece": chk_piece_at_most_two,
        "shift_reflection_witness": chk_shift_reflection,
    }),
    "cover-simplex": (_SimplexCtx, {
        "cover_size": chk_cover_size,
        "piece_vertices_inside": chk_piece_vertices_inside,
        "shrunken_simplex_covered": chk_shrunken_covered,
    }),
    "cover-polytope": (_PolyCtx, {
        "piece_count_eta": chk_eta,
        "lattice_cover_exact": chk_cover_lattice,
        "triangulation_regular": chk_triangulation,
    }),
    "bounds-box": (_BoxCtx, {
        "slab_bracketing": chk_slab_bracketing,
        "box_bound_dominates": chk_box_bound,
    }),
    "bounds-polytope": (_PolyCtx, {
        "polytope_bound_dominates": chk_polytope_bound,
        "piece_count_eta": chk_eta,
        "vertex_coordinate_bounds": chk_vertex_bounds,
        "facet_coefficient_bounds": chk_facet_bounds,
        "piece_width_bound": chk_piece_widths,
    }),
    "bounds-grid": (_GridCtx, {
        "grid_bound_dominates": chk_grid_bound,
    }),
    "teaching-fn": (_FnCtx, {
        "separation_property": chk_separation,
        "reflection_outside_F": chk_reflection_outside_F,
        "tprime_size_bound": chk_tprime_bound,
    }),
    "teaching-grid": (_Ctx, {
        "unique_minimal_teaching_set": chk_teaching_exhaustive,
        "teaching_set_matches_flip_scan": chk_teaching_matches_scan,
        "teaching_points_are_vertices_of_F": chk_vertices_of_F,
        "sigma_equals_four": chk_sigma,
    }),
}


@dataclass
class PropertyResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def to_json(self):
        return {"property": self.name, "checked": self.checked, "pass": self.passed,
                "failures": self.failures}


@dataclass
class VerifyReport:
    suite: str
    seed: int
    trials: int
    properties: list

    @property
    def passed(self):
        return all(p.passed for p in self.properties)

    def to_json(self):
        return {"suite": self.suite, "seed": self.seed, "trials": self.trials, "pass": self.passed,
                "properties": [p.to_json() for p in self.properties]}


def _run_group(group, instances, results, max_failures=3):
    ctx_cls, checks = CHECKS[group]
    for inst in instances:
        ctx = ctx_cls(inst)
        for name, fn in checks.items():
            r = results.setdefault(f"{group}/{name}", PropertyResult(f"{group}/{name}"))
            r.checked += 1
            for detail in fn(ctx):
                if len(r.failures) < max_failures:
                    r.failures.append({"suite": group, "property": name, "instance": inst,
                                       "detail": detail})


def recheck(record: dict) -> list:
    """Rerun one check from a counterexample record; returns its failure details."""
    ctx_cls, checks = CHECKS[record["suite"]]
    return checks[record["property"]](ctx_cls(record["instance"]))


def verify(suite: str, trials: int = 20, seed: int = 0, k: int | None = None) -> VerifyReport:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    rng = random.Random(seed)
    res: dict[str, PropertyResult] = {}
    if suite == "box-partition":
        _run_group("box-partition", [random_box(rng) for _ in range(trials)], res)
    elif suite == "cover":
        _run_group("cover-simplex", [random_simplex(rng) for _ in range(trials)], res)
        _run_group("cover-polytope", [random_polytope(rng) for _ in range(trials)], res)
    elif suite == "bounds":
        _run_group("bounds-box", [random_box(rng) for _ in range(trials)], res)
        _run_group("bounds-polytope", [random_polytope(rng) for _ in range(trials)], res)
        _run_group("bounds-grid", [random_grid_section(rng) for _ in range(trials)], res)
    else:
        _run_group("teaching-fn", [random_tprime(rng, k) for _ in range(trials)], res)
        ks = [k] if k else list(range(2, 7))
        _run_group("teaching-grid", [{"n": 2, "k": kk} for kk in ks], res)
    return VerifyReport(suite, seed, trials, list(res.values()))
