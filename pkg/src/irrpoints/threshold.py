"""Threshold functions of k-valued logic and their minimal teaching sets.

A function on the grid ``E_k^n = {0..k-1}^n`` is stored either as a
:class:`ThresholdFn` (an integer inequality ``a.x <= a0`` marking the 0-points)
or, for exhaustive work, as a bitmask over :func:`grid` order with bit ``i``
set when the i-th grid point has value 1.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Mapping, Sequence

from .bounds import tprime_teaching_bound
from .cone import extreme_rays
from .errors import CapacityError, DimensionError, DomainError
from .linalg import dot, nullspace, primitive, rank
from .lp import lp_feasible
from .polytope import LatticeSet, convex_hull_vertices, irreducible_subset


@lru_cache(maxsize=None)
def grid(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Points of E_k^n in lexicographic order."""
    return tuple(product(range(k), repeat=n))


@dataclass(frozen=True)
class ThresholdFn:
    n: int
    k: int
    a0: int
    a: tuple[int, ...]

    def __post_init__(self):
        a = tuple(int(v) for v in self.a)
        if self.k < 2:
            raise DomainError("k must be at least 2")
        if len(a) != self.n or self.n < 1:
            raise DimensionError(f"expected {self.n} coefficients, got {len(a)}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "a0", int(self.a0))

    def __call__(self, x) -> int:
        return eval_fn(self, x)

    def values(self) -> tuple[int, ...]:
        return tuple(0 if dot(self.a, x) <= self.a0 else 1 for x in grid(self.n, self.k))

    def mask(self) -> int:
        return sum(1 << i for i, v in enumerate(self.values()) if v)

    def classes(self):
        M0, M1 = [], []
        for x in grid(self.n, self.k):
            (M0 if dot(self.a, x) <= self.a0 else M1).append(x)
        return M0, M1

    def to_json(self):
        return {"n": self.n, "k": self.k, "a0": self.a0, "a": list(self.a)}

    @classmethod
    def from_json(cls, d):
        return cls(int(d["n"]), int(d["k"]), int(d["a0"]), tuple(int(v) for v in d["a"]))


@dataclass(frozen=True)
class TeachingSet:
    t0: tuple[tuple[int, ...], ...]
    t1: tuple[tuple[int, ...], ...]

    @property
    def points(self):
        return tuple(sorted(self.t0 + self.t1))

    def __len__(self):
        return len(self.t0) + len(self.t1)

    def to_json(self):
        return {"t0": [list(p) for p in self.t0], "t1": [list(p) for p in self.t1]}


def _check_point(f, x):
    x = tuple(x)
    if len(x) != f.n or any(not (0 <= v < f.k) or int(v) != v for v in x):
        raise DomainError(f"{x} is not a point of E_{f.k}^{f.n}")
    return x


def eval_fn(f: ThresholdFn, x) -> int:
    x = _check_point(f, x)
    return 0 if dot(f.a, x) <= f.a0 else 1


# ---------------------------------------------------------------- separability

def _separate(M0, M1, n):
    """Integer (a, a0) with a.x <= a0 on M0 and a.x >= a0 + 1 on M1, or None."""
    if not M1:
        return (0,) * n, 0
    if not M0:
        return (0,) * n, -1
    V0 = convex_hull_vertices(M0)
    V1 = convex_hull_vertices(M1)
    rows = [(tuple(x) + (-1,), "<=", 0) for x in V0]
    rows += [(tuple(x) + (-1,), ">=", 1) for x in V1]
    res = lp_feasible(rows, dim=n + 1)
    if not res.feasible:
        return None
    w = primitive(res.witness)
    return w[:n], w[n]


def is_separable(labels: Mapping[Sequence[int], int], n: int | None = None,
                 k: int | None = None) -> ThresholdFn | None:
    """An integer threshold realisation of a complete labelling of E_k^n, or None."""
    labels = {tuple(p): int(v) for p, v in labels.items()}
    if not labels:
        raise DomainError("empty labelling")
    if n is None:
        n = len(next(iter(labels)))
    if k is None:
        k = 1 + max(max(p) for p in labels)
    pts = grid(n, k)
    if len(labels) != len(pts) or any(p not in labels for p in pts):
        raise DomainError("labelling must cover every point of the grid")
    M0 = [p for p in pts if labels[p] == 0]
    M1 = [p for p in pts if labels[p] == 1]
    sep = _separate(M0, M1, n)
    if sep is None:
        return None
    return ThresholdFn(n, max(k, 2), sep[1], sep[0])


def essential(f: ThresholdFn, z) -> bool:
    """True iff flipping f at z gives another threshold function."""
    z = _check_point(f, z)
    M0, M1 = f.classes()
    own, other = (M0, M1) if eval_fn(f, z) == 0 else (M1, M0)
    if z not in convex_hull_vertices(own):
        return False
    own = [p for p in own if p != z]
    other = other + [z]
    if eval_fn(f, z) == 0:
        return _separate(own, other, f.n) is not None
    return _separate(other, own, f.n) is not None


def teaching_set(f: ThresholdFn) -> TeachingSet:
    """The unique minimal teaching set: all essential points, split by value."""
    M0, M1 = f.classes()
    t0 = tuple(z for z in convex_hull_vertices(M0) if essential(f, z))
    t1 = tuple(z for z in convex_hull_vertices(M1) if essential(f, z))
    return TeachingSet(tuple(sorted(t0)), tuple(sorted(t1)))


# ---------------------------------------------------------------- enumeration

def _affine_coords(points):
    """Project points on their affine hull injectively onto some coordinates."""
    p0 = points[0]
    diffs = [[Fraction(a - b) for a, b in zip(p, p0)] for p in points[1:]]
    r = rank(diffs) if diffs else 0
    if r == len(p0):
        return points, r
    cols = []
    for c in range(len(p0)):
        trial = cols + [c]
        if rank([[row[j] for j in trial] for row in diffs]) == len(trial):
            cols = trial
            if len(cols) == r:
                break
    return [tuple(p[c] for c in cols) for p in points], r


def _dichotomies(points, bits):
    """Bitmasks of all affine dichotomies of ``points`` (value-1 side)."""
    full = 0
    for b in bits:
        full |= b
    out = {0, full}
    if len(points) <= 1:
        return out
    pts, r = _affine_coords(points)
    seen = set()
    for sub in combinations(range(len(pts)), r):
        ker = nullspace([list(pts[i]) + [Fraction(-1)] for i in sub])
        if len(ker) != 1:
            continue
        h = primitive(ker[0])
        nz = next(v for v in h if v != 0)
        if nz < 0:
            h = tuple(-v for v in h)
        if h in seen:
            continue
        seen.add(h)
        a, a0 = h[:-1], h[-1]
        above = below = 0
        on_pts, on_bits = [], []
        for p, b in zip(pts, bits):
            s = dot(a, p) - a0
            if s > 0:
                above |= b
            elif s < 0:
                below |= b
            else:
                on_pts.append(p)
                on_bits.append(b)
        for S in _dichotomies(on_pts, on_bits):
            out.add(above | S)
            out.add(below | S)
    return out


def _guard(n, k):
    if n < 1 or k < 2:
        raise DomainError("need n >= 1 and k >= 2")
    ok = (n == 1 and k <= 4096) or (n == 2 and k <= 16) or (n == 3 and k <= 4)
    if not ok:
        raise CapacityError(f"exhaustive enumeration over E_{k}^{n} exceeds the scale guard")


@lru_cache(maxsize=16)
def threshold_functions(n: int, k: int) -> tuple[int, ...]:
    """Every threshold function on E_k^n as a bitmask, sorted."""
    _guard(n, k)
    pts = grid(n, k)
    return tuple(sorted(_dichotomies(list(pts), [1 << i for i in range(len(pts))])))


def mask_to_fn(mask: int, n: int, k: int) -> ThresholdFn:
    labels = {p: (mask >> i) & 1 for i, p in enumerate(grid(n, k))}
    f = is_separable(labels, n, k)
    if f is None:
        raise DomainError("mask is not a threshold function")
    return f


def teaching_mask(mask: int, functions: frozenset, npts: int) -> int:
    """Essential points of ``mask`` as a bitmask, by lookup in the full function set."""
    out = 0
    for i in range(npts):
        if mask ^ (1 << i) in functions:
            out |= 1 << i
    return out


def sigma(n: int, k: int) -> int:
    """Teaching dimension: the largest minimal teaching set over all of T(n, k)."""
    return sigma_witness(n, k)[0]


def sigma_witness(n: int, k: int) -> tuple[int, int]:
    """(sigma, smallest bitmask attaining it)."""
    funcs = threshold_functions(n, k)
    fs = frozenset(funcs)
    npts = k ** n
    best = (-1, 0)
    for f in funcs:
        c = bin(teaching_mask(f, fs, npts)).count("1")
        if c > best[0]:
            best = (c, f)
    return best


# ---------------------------------------------------------------- F_0, F_1

@dataclass(frozen=True)
class SepCone:
    generators: tuple[tuple[int, ...], ...]

    def __contains__(self, x):
        return in_cone(self.generators, x)


def cone_generators(f: ThresholdFn, reduced: bool = True) -> list[tuple[int, ...]]:
    """Generators of K(f) = cone(M_1 - M_0).

    With ``reduced`` only differences of hull vertices are kept; they span
    the same cone.
    """
    M0, M1 = f.classes()
    if not M0 or not M1:
        return []
    if reduced:
        M0 = convex_hull_vertices(M0)
        M1 = convex_hull_vertices(M1)
    return sorted({primitive([a - b for a, b in zip(y, x)]) for y in M1 for x in M0})


def sep_cone(f: ThresholdFn, reduced: bool = True) -> SepCone:
    return SepCone(tuple(cone_generators(f, reduced)))


def in_cone(gens, x) -> bool:
    if not gens:
        return all(v == 0 for v in x)
    n = len(x)
    rows = [([g[c] for g in gens], "=", x[c]) for c in range(n)]
    rows += [([-int(i == j) for j in range(len(gens))], "<=", 0) for i in range(len(gens))]
    return lp_feasible(rows, dim=len(gens), method="simplex").feasible


def in_F(f: ThresholdFn, nu: int, x, exclude=None) -> bool:
    """Exact membership of x in F_0 = conv M_0 - K(f) or F_1 = conv M_1 + K(f).

    ``exclude`` drops one point of M_nu from the convex part (used to test
    whether that point is a vertex of F_nu).
    """
    if nu not in (0, 1):
        raise ValueError("nu must be 0 or 1")
    M = f.classes()[nu]
    if exclude is not None:
        M = [p for p in M if p != tuple(exclude)]
    if not M:
        return False
    V = convex_hull_vertices(M)
    sign = -1 if nu == 0 else 1
    gens = [tuple(sign * v for v in g) for g in cone_generators(f)]
    n = f.n
    nv, ng = len(V), len(gens)
    rows = []
    for c in range(n):
        rows.append(([p[c] for p in V] + [g[c] for g in gens], "=", Fraction(x[c])))
    rows.append(([1] * nv + [0] * ng, "=", 1))
    for i in range(nv + ng):
        rows.append(([-int(i == j) for j in range(nv + ng)], "<=", 0))
    return lp_feasible(rows, dim=nv + ng, method="simplex").feasible


def has_separation_property(G) -> bool:
    """No ``2x - y`` (x != y in G) stays in the nonnegative orthant."""
    G = [tuple(p) for p in G]
    for p in G:
        if any(v < 0 for v in p):
            raise DomainError(f"{p} has a negative component")
    for x in G:
        for y in G:
            if x != y and all(2 * a - b >= 0 for a, b in zip(x, y)):
                return False
    return True


def in_tprime(f: ThresholdFn) -> bool:
    """Whether f's stored inequality satisfies 0 < a0 < a_j (k-1) for every j."""
    return all(0 < f.a0 < aj * (f.k - 1) for aj in f.a)


# ---------------------------------------------------------------- rationalisation

def approximation_cone(a, a0, n: int, k: int) -> list[tuple]:
    """Rows r with r . (b0, b, b_{n+1}) >= 0 cutting out the approximation cone."""
    a = [Fraction(v) for v in a]
    a0 = Fraction(a0)
    rows = []
    for x in grid(n, k):
        if dot(a, x) <= a0:
            rows.append((1,) + tuple(-v for v in x) + (0,))
        else:
            rows.append((-1,) + tuple(x) + (-1,))
    rows.append((0,) * (n + 1) + (1,))
    return rows


def rationalize(a, a0, n: int, k: int) -> tuple[tuple[int, ...], int]:
    """Integer ``(b, b0)`` inducing the same dichotomy of E_k^n as ``a.x <= a0``.

    Taken from the extreme rays of the approximation cone with positive last
    component; the lexicographically smallest such ray is returned.
    """
    if k < 2:
        raise DomainError("k must be at least 2")
    if len(a) != n:
        raise DimensionError("coefficient vector does not match n")
    rays = [r for r in extreme_rays(approximation_cone(a, a0, n, k)) if r[-1] > 0]
    r = min(rays)
    return tuple(r[1:n + 1]), r[0]


# ---------------------------------------------------------------- slice check

def _normalize(f: ThresholdFn):
    """Reflect and permute coordinates so a_1 >= ... >= a_n >= 0.

    Returns (g, point map taking f's grid points to g's).
    """
    k = f.k
    flips = [aj < 0 for aj in f.a]
    a = [abs(v) for v in f.a]
    a0 = f.a0 - sum(-v * (k - 1) for v in f.a if v < 0)
    order = sorted(range(f.n), key=lambda j: (-a[j], j))
    g = ThresholdFn(f.n, k, a0, tuple(a[j] for j in order))

    def to_g(x):
        y = [(k - 1 - v) if fl else v for v, fl in zip(x, flips)]
        return tuple(y[j] for j in order)

    return g, to_g


@dataclass(frozen=True)
class SliceReport:
    fn: ThresholdFn
    normalized: ThresholdFn
    case: str
    sizes: tuple[int, int]
    checks: tuple[tuple[str, bool, str], ...]

    @property
    def ok(self):
        return all(passed for _, passed, _ in self.checks)

    def to_json(self):
        return {"fn": self.fn.to_json(), "normalized": self.normalized.to_json(), "case": self.case,
                "sizes": list(self.sizes),
                "checks": [{"name": n, "pass": p, "detail": d} for n, p, d in self.checks]}


def _has_zero(g):
    return g.a0 >= 0


def _has_one(g):
    return dot(g.a, (g.k - 1,) * g.n) > g.a0


def _slice_points(g: ThresholdFn):
    n, k = g.n, g.k
    an = g.a[-1]
    lo = g.a0 - (k - 1) * an
    out = []
    for x in grid(n - 1, k) if n > 1 else [()]:
        s = dot(g.a[:-1], x)
        if lo < s <= g.a0:
            out.append(tuple(x) + (0,))
    return out


def irr_connection_check(f: ThresholdFn, sigma_lower=None) -> SliceReport:
    """Check the teaching-set size of f against the slice polytope of its class.

    ``sigma_lower`` gives sigma(n-1, k); computed exhaustively when omitted.
    """
    n, k = f.n, f.k
    if n not in (2, 3) or (n == 3 and k > 6) or (n == 2 and k > 40):
        raise CapacityError("irr_connection_check is limited to n in {2,3} and small k")
    g, _ = _normalize(f)
    T = teaching_set(g)
    Tn = (T.t0, T.t1)
    sizes = (len(T.t0), len(T.t1))
    checks = []
    an = g.a[-1]
    if sigma_lower is None:
        sigma_lower = sigma(n - 1, k)
    if not _has_zero(g) or not _has_one(g):
        # one class is empty: the slice argument is vacuous
        return SliceReport(f, g, "constant", sizes, (("empty class", True, str(sizes)),))
    if g.a0 <= (k - 1) * an:
        bound = tprime_teaching_bound(n, k)
        case = "direct"
        for nu in (0, 1):
            checks.append((f"|T_{nu}| <= n(1+log n)(1+log(k+1))^(n-2)",
                           sizes[nu] <= bound, f"{sizes[nu]} <= {float(bound):.4f}"))
        return SliceReport(f, g, case, sizes, tuple(checks))
    e_n = (0,) * (n - 1) + (1,)
    if not in_cone(cone_generators(g), e_n):
        case = "e_n outside K"
        for nu in (0, 1):
            border = all(x[-1] in (0, k - 1) for x in Tn[nu])
            checks.append((f"T_{nu} on x_n in {{0,k-1}}", border, str(Tn[nu])))
            checks.append((f"|T_{nu}| <= 2 sigma(n-1,k)", sizes[nu] <= 2 * sigma_lower,
                           f"{sizes[nu]} <= {2 * sigma_lower}"))
        return SliceReport(f, g, case, sizes, tuple(checks))
    case = "slice"
    head = g.a[:-1]
    cut0 = g.a0 - (k - 1) * an
    split = (
        ([x for x in Tn[0] if dot(head, x[:-1]) <= cut0], [x for x in Tn[0] if dot(head, x[:-1]) > cut0]),
        ([x for x in Tn[1] if dot(head, x[:-1]) > g.a0], [x for x in Tn[1] if dot(head, x[:-1]) <= g.a0]),
    )
    P = LatticeSet(tuple(_slice_points(g)), n)
    irr = irreducible_subset(P)
    for nu in (0, 1):
        tp, tpp = split[nu]
        checks.append((f"T'_{nu} on x_n in {{0,k-1}}", all(x[-1] in (0, k - 1) for x in tp), str(tp)))
        checks.append((f"|T'_{nu}| <= 2 sigma(n-1,k)", len(tp) <= 2 * sigma_lower,
                       f"{len(tp)} <= {2 * sigma_lower}"))
        checks.append((f"|T''_{nu}| <= irreducible points of slice", len(tpp) <= len(irr),
                       f"{len(tpp)} <= {len(irr)}"))
    return SliceReport(f, g, case, sizes, tuple(checks))
