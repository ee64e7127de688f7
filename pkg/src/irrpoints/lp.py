"""Exact linear feasibility with strict inequalities.

Two independent engines are provided:

* ``"fme"`` -- Fourier-Motzkin elimination tracking strictness, with exact
  back-substitution for a witness.  Used for small systems.
* ``"simplex"`` -- a dense two-phase simplex over ``Fraction`` with Bland's rule,
  strict rows handled by maximising a common slack ``t``.

``method="auto"`` picks FME for narrow systems and the simplex otherwise.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import DimensionError

_REL = {
    "<=": "le", "≤": "le", "le": "le",
    "<": "lt", "lt": "lt",
    "=": "eq", "==": "eq", "eq": "eq",
    ">=": "ge", "≥": "ge", "ge": "ge",
    ">": "gt", "gt": "gt",
}

FME_MAX_ROWS = 24
FME_MAX_VARS = 8


@dataclass(frozen=True)
class LPResult:
    feasible: bool
    witness: tuple[Fraction, ...] | None = None

    def __bool__(self):
        return self.feasible


def _normalize(constraints) -> tuple[int, list[tuple[list[Fraction], str, Fraction]]]:
    rows = []
    dim = None
    for a, rel, a0 in constraints:
        a = [Fraction(v) for v in a]
        if dim is None:
            dim = len(a)
        elif len(a) != dim:
            raise DimensionError(f"constraint of length {len(a)} in a system of dimension {dim}")
        try:
            kind = _REL[rel]
        except KeyError:
            raise ValueError(f"unknown relation {rel!r}") from None
        a0 = Fraction(a0)
        if kind in ("ge", "gt"):
            a = [-v for v in a]
            a0 = -a0
            kind = "le" if kind == "ge" else "lt"
        rows.append((a, kind, a0))
    return dim or 0, rows


def lp_feasible(constraints: Iterable[tuple[Sequence, str, object]], dim: int | None = None,
                method: str = "auto") -> LPResult:
    """Decide feasibility of a system of ``a.x REL a0`` constraints exactly.

    A feasible result carries a rational witness satisfying every row, strict
    rows strictly.  ``dim`` is only needed when ``constraints`` is empty.
    """
    n, rows = _normalize(list(constraints))
    if dim is not None:
        if rows and n != dim:
            raise DimensionError(f"constraints have dimension {n}, expected {dim}")
        n = dim
    if method == "auto":
        method = "fme" if len(rows) <= FME_MAX_ROWS and n <= FME_MAX_VARS else "simplex"
    if method == "fme":
        w = _fme(n, rows)
    elif method == "simplex":
        w = _simplex(n, rows)
    else:
        raise ValueError(f"unknown method {method!r}")
    if w is None:
        return LPResult(False)
    return LPResult(True, tuple(w))


def check_witness(constraints, x) -> bool:
    """True iff ``x`` satisfies every constraint exactly."""
    _, rows = _normalize(list(constraints))
    for a, kind, a0 in rows:
        v = sum(ai * xi for ai, xi in zip(a, x))
        if kind == "le" and not v <= a0:
            return False
        if kind == "lt" and not v < a0:
            return False
        if kind == "eq" and v != a0:
            return False
    return True


# ---------------------------------------------------------------- Fourier-Motzkin

def _scale_row(a, r):
    """Rescale ``a.x <= r`` by a positive factor so ``a`` is a primitive integer vector."""
    den = 1
    for v in a:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in a]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return tuple(ints), r
    return tuple(v // g for v in ints), r * den / g


def _fme(n, rows):
    # Equalities: Gaussian substitution, recorded as (var, coeffs, rhs) meaning
    # x_var = rhs - sum(coeffs[j] * x_j) over j != var.
    subs = []
    ineqs = []
    eqs = []
    for a, kind, a0 in rows:
        (eqs if kind == "eq" else ineqs).append((list(a), kind, a0))
    while eqs:
        a, _, a0 = eqs.pop()
        piv = next((j for j, v in enumerate(a) if v != 0), None)
        if piv is None:
            if a0 != 0:
                return None
            continue
        c = a[piv]
        coeffs = [v / c for v in a]
        rhs = a0 / c

        def sub(row, kind, r):
            f = row[piv]
            if f == 0:
                return row, kind, r
            return [x - f * y for x, y in zip(row, coeffs)], kind, r - f * rhs

        eqs = [sub(*e) for e in eqs]
        ineqs = [sub(*e) for e in ineqs]
        subs.append((piv, coeffs, rhs))

    # dict key: primitive lhs -> (rhs, strict)
    def add(store, a, strict, r):
        if all(v == 0 for v in a):
            return r > 0 if strict else r >= 0
        key, rr = _scale_row(a, r)
        old = store.get(key)
        if old is None or rr < old[0] or (rr == old[0] and strict and not old[1]):
            store[key] = (rr, strict)
        return True

    store = {}
    for a, kind, a0 in ineqs:
        if not add(store, a, kind == "lt", a0):
            return None

    eliminated = set(piv for piv, _, _ in subs)
    active = [j for j in range(n) if j not in eliminated]
    history = []
    while active:
        best = None
        for j in active:
            p = sum(1 for key in store if key[j] > 0)
            q = sum(1 for key in store if key[j] < 0)
            cost = p * q - p - q
            if best is None or cost < best[0]:
                best = (cost, j)
        j = best[1]
        pos, neg, rest = [], [], {}
        for key, (r, s) in store.items():
            if key[j] > 0:
                pos.append((key, r, s))
            elif key[j] < 0:
                neg.append((key, r, s))
            else:
                rest[key] = (r, s)
        history.append((j, pos, neg))
        for kp, rp, sp in pos:
            for kn, rn, sn in neg:
                fp, fn = -kn[j], kp[j]
                a = [fp * x + fn * y for x, y in zip(kp, kn)]
                a[j] = 0
                if not add(rest, [Fraction(v) for v in a], sp or sn, fp * rp + fn * rn):
                    return None
        store = rest
        active.remove(j)
    for key, (r, s) in store.items():
        if (s and not 0 < r) or (not s and not 0 <= r):
            return None

    x = [Fraction(0)] * n
    for j, pos, neg in reversed(history):
        lo, lo_strict, hi, hi_strict = None, False, None, False
        for key, r, s in pos:
            v = (r - sum(key[i] * x[i] for i in range(n) if i != j)) / key[j]
            if hi is None or v < hi or (v == hi and s):
                hi, hi_strict = v, s
        for key, r, s in neg:
            v = (r - sum(key[i] * x[i] for i in range(n) if i != j)) / key[j]
            if lo is None or v > lo or (v == lo and s):
                lo, lo_strict = v, s
        if lo is not None and hi is not None:
            if lo == hi:
                x[j] = lo
            else:
                x[j] = (lo + hi) / 2
        elif lo is not None:
            x[j] = lo + 1 if lo_strict else lo
        elif hi is not None:
            x[j] = hi - 1 if hi_strict else hi
        else:
            x[j] = Fraction(0)
    for piv, coeffs, rhs in reversed(subs):
        x[piv] = rhs - sum(coeffs[i] * x[i] for i in range(n) if i != piv)
    return x


# ---------------------------------------------------------------- simplex

def _pivot(T, basis, r, c):
    row = T[r]
    inv = 1 / row[c]
    if inv != 1:
        T[r] = row = [v * inv for v in row]
    for i, other in enumerate(T):
        if i != r:
            f = other[c]
            if f:
                T[i] = [a - f * b for a, b in zip(other, row)]
    basis[r] = c


def _run(T, basis, obj_row, allowed):
    """Maximise the objective held in ``T[obj_row]`` (reduced costs, rhs = -value)."""
    m = obj_row
    while True:
        cost = T[obj_row]
        c = next((j for j in allowed if cost[j] > 0), None)
        if c is None:
            return True
        best = None
        for i in range(m):
            a = T[i][c]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False  # unbounded
        _pivot(T, basis, best[1], c)


def _simplex(n, rows):
    # Split only variables without an explicit x_j >= 0 row.
    nonneg = set()
    kept = []
    for a, kind, a0 in rows:
        nz = [j for j, v in enumerate(a) if v != 0]
        if kind == "le" and len(nz) == 1 and a[nz[0]] < 0 and a0 == 0:
            nonneg.add(nz[0])
        else:
            kept.append((a, kind, a0))
    strict = any(kind == "lt" for _, kind, _ in kept)

    cols = []  # (original var, sign)
    for j in range(n):
        cols.append((j, 1))
        if j not in nonneg:
            cols.append((j, -1))
    nx = len(cols)
    t_col = nx if strict else None
    nvar = nx + (1 if strict else 0)

    body = []
    for a, kind, a0 in kept:
        coeffs = [a[j] * s for j, s in cols]
        if strict:
            coeffs.append(Fraction(1) if kind == "lt" else Fraction(0))
        body.append((coeffs, kind, a0))
    if strict:
        body.append(([Fraction(0)] * nx + [Fraction(1)], "le", Fraction(1)))

    nslack = sum(1 for _, kind, _ in body if kind != "eq")
    width = nvar + nslack
    T = []
    basis = []
    need_art = []
    si = nvar
    for coeffs, kind, rhs in body:
        row = coeffs + [Fraction(0)] * nslack
        slack = None
        if kind != "eq":
            row[si] = Fraction(1)
            slack = si
            si += 1
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
            slack = None
        T.append(row + [rhs])
        if slack is not None:
            basis.append(slack)
        else:
            basis.append(None)
            need_art.append(len(T) - 1)
    m = len(T)
    nart = len(need_art)
    for row in T:
        row[-1:-1] = [Fraction(0)] * nart
    for k, i in enumerate(need_art):
        T[i][width + k] = Fraction(1)
        basis[i] = width + k
    total = width + nart

    # phase 1: maximise -sum(artificials)
    if nart:
        obj = [Fraction(0)] * (total + 1)
        for i in need_art:
            obj = [o + v for o, v in zip(obj, T[i])]
        for k in range(nart):
            obj[width + k] = Fraction(0)
        T.append(obj)
        _run(T, basis, m, range(total))
        if T[m][-1] != 0:
            return None
        T.pop()
        # drive artificials out of the basis
        i = 0
        while i < len(T):
            if basis[i] >= width:
                c = next((j for j in range(width) if T[i][j] != 0), None)
                if c is None:
                    del T[i]
                    del basis[i]
                    continue
                _pivot(T, basis, i, c)
            i += 1
        T = [row[:width] + [row[-1]] for row in T]
        m = len(T)

    if strict:
        obj = [Fraction(0)] * (width + 1)
        obj[t_col] = Fraction(1)
        for i, b in enumerate(basis):
            f = obj[b]
            if f:
                obj = [o - f * v for o, v in zip(obj, T[i])]
        T.append(obj)
        _run(T, basis, m, range(width))
        T.pop()

    vals = [Fraction(0)] * width
    for i, b in enumerate(basis):
        vals[b] = T[i][-1]
    if strict and vals[t_col] <= 0:
        return None
    x = [Fraction(0)] * n
    for k, (j, s) in enumerate(cols):
        x[j] += s * vals[k]
    return x
