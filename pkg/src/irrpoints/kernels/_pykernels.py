"""Pure numpy implementation of the lattice-set kernels."""
import itertools

import numpy as np

# Small directions tried in bulk before the per-point scan.
_RADIUS = 2


def _encoder(pts):
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    width = hi - lo + 1
    strides = np.ones(pts.shape[1], dtype=np.int64)
    for j in range(pts.shape[1] - 2, -1, -1):
        strides[j] = strides[j + 1] * width[j + 1]
    keys = ((pts - lo) * strides).sum(axis=1)
    order = np.argsort(keys, kind="stable")
    sorted_keys = keys[order]

    def member(q):
        inside = np.all((q >= lo) & (q <= hi), axis=1)
        k = ((np.clip(q, lo, hi) - lo) * strides).sum(axis=1)
        pos = np.searchsorted(sorted_keys, k)
        pos = np.minimum(pos, len(sorted_keys) - 1)
        return inside & (sorted_keys[pos] == k)

    return member


def _half_directions(n, radius):
    for d in itertools.product(range(-radius, radius + 1), repeat=n):
        nz = next((v for v in d if v != 0), 0)
        if nz > 0:
            yield d


def reducible_mask(pts):
    """Boolean mask: ``pts[i]`` is the midpoint of two other points of ``pts``."""
    pts = np.ascontiguousarray(pts, dtype=np.int64)
    N = len(pts)
    out = np.zeros(N, dtype=bool)
    if N < 3:
        return out
    member = _encoder(pts)
    for d in _half_directions(pts.shape[1], _RADIUS):
        d = np.asarray(d, dtype=np.int64)
        out |= member(pts + d) & member(pts - d)
    for i in np.flatnonzero(~out):
        q = 2 * pts[i] - pts
        hit = member(q)
        hit[i] = False
        out[i] = bool(hit.any())
    return out
