"""Extreme rays of pointed polyhedral cones by the double description method."""
from fractions import Fraction
from typing import Sequence

from .errors import DimensionError, LinealityError
from .linalg import as_matrix, dot, primitive, rank


def _independent_rows(rows, d):
    chosen = []
    for i, r in enumerate(rows):
        if rank([rows[j] for j in chosen] + [r]) > len(chosen):
            chosen.append(i)
            if len(chosen) == d:
                break
    return chosen


def _inverse_columns(B):
    """Columns of B^{-1} for a square invertible B, by Gauss-Jordan."""
    d = len(B)
    M = [list(row) + [Fraction(int(i == j)) for j in range(d)] for i, row in enumerate(B)]
    for c in range(d):
        p = next(i for i in range(c, d) if M[i][c] != 0)
        M[c], M[p] = M[p], M[c]
        inv = 1 / M[c][c]
        M[c] = [v * inv for v in M[c]]
        for i in range(d):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return [[M[i][d + j] for i in range(d)] for j in range(d)]


def extreme_rays(cone: Sequence[Sequence]) -> list[tuple[int, ...]]:
    """Primitive integer generators of ``{y : r . y >= 0 for every row r}``.

    Raises LinealityError when the cone is not pointed.
    """
    rows = as_matrix(cone)
    if not rows:
        raise LinealityError("a cone with no constraints is a linear space")
    d = len(rows[0])
    if d == 0:
        raise DimensionError("zero-dimensional ambient space")
    int_rows = [primitive(r) for r in rows]
    if rank(int_rows) < d:
        raise LinealityError(f"constraint matrix has rank {rank(int_rows)} < {d}")

    seed = _independent_rows(int_rows, d)
    cols = _inverse_columns([[Fraction(v) for v in int_rows[i]] for i in seed])
    processed = list(seed)
    rays = []
    for j, col in enumerate(cols):
        tight = frozenset(seed[i] for i in range(d) if i != j)
        rays.append((primitive(col), tight))

    seen = set(seed)
    for idx, r in enumerate(int_rows):
        if idx in seen:
            continue
        seen.add(idx)
        pos, neg, zero = [], [], []
        for ray, z in rays:
            v = dot(r, ray)
            if v > 0:
                pos.append((ray, z, v))
            elif v < 0:
                neg.append((ray, z, v))
            else:
                zero.append((ray, z | {idx}))
        new = [(ray, z) for ray, z, _ in pos] + zero
        if neg:
            for p, zp, vp in pos:
                for q, zq, vq in neg:
                    common = zp & zq
                    if len(common) < d - 2:
                        continue
                    if d > 2 and rank([int_rows[i] for i in common]) < d - 2:
                        continue
                    y = primitive([vp * b - vq * a for a, b in zip(p, q)])
                    new.append((y, common | {idx}))
        processed.append(idx)
        # collapse duplicate directions, merging tight sets
        merged = {}
        for ray, z in new:
            merged[ray] = merged.get(ray, frozenset()) | z
        rays = list(merged.items())
    return sorted(ray for ray, _ in rays)
