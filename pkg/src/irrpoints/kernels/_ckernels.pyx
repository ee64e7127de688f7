# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled lattice-set kernels."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


cdef inline bint _member(const int64_t[::1] keys, int64_t key) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = keys.shape[0] - 1, mid
    while lo <= hi:
        mid = (lo + hi) >> 1
        if keys[mid] < key:
            lo = mid + 1
        elif keys[mid] > key:
            hi = mid - 1
        else:
            return True
    return False


cdef inline bint _reflect_in(const int64_t[:, ::1] P, Py_ssize_t i, Py_ssize_t j,
                             const int64_t[::1] lo, const int64_t[::1] hi,
                             const int64_t[::1] strides,
                             const int64_t[::1] keys) noexcept nogil:
    cdef Py_ssize_t c, n = P.shape[1]
    cdef int64_t q, key = 0
    for c in range(n):
        q = 2 * P[i, c] - P[j, c]
        if q < lo[c] or q > hi[c]:
            return False
        key += (q - lo[c]) * strides[c]
    return _member(keys, key)


def reducible_mask(pts):
    """Boolean mask: ``pts[i]`` is the midpoint of two other points of ``pts``.

    Points are sorted by key (lexicographic order); partners are scanned
    outward from each point so interior points exit after a few probes.
    """
    arr = np.ascontiguousarray(pts, dtype=np.int64)
    cdef Py_ssize_t N = arr.shape[0]
    out = np.zeros(N, dtype=bool)
    if N < 3:
        return out
    lo_a = arr.min(axis=0)
    hi_a = arr.max(axis=0)
    width = hi_a - lo_a + 1
    n = arr.shape[1]
    strides_a = np.ones(n, dtype=np.int64)
    for j in range(n - 2, -1, -1):
        strides_a[j] = strides_a[j + 1] * width[j + 1]
    keys_a = ((arr - lo_a) * strides_a).sum(axis=1)
    order = np.argsort(keys_a, kind="stable")
    sorted_pts = np.ascontiguousarray(arr[order])
    sorted_keys = np.ascontiguousarray(keys_a[order])

    cdef const int64_t[:, ::1] P = sorted_pts
    cdef const int64_t[::1] keys = sorted_keys
    cdef const int64_t[::1] lo = lo_a
    cdef const int64_t[::1] hi = hi_a
    cdef const int64_t[::1] strides = strides_a
    found_a = np.zeros(N, dtype=np.uint8)
    cdef unsigned char[::1] found = found_a
    cdef Py_ssize_t i, t, reach
    with nogil:
        for i in range(N):
            reach = i if i > N - 1 - i else N - 1 - i
            for t in range(1, reach + 1):
                if i + t < N and _reflect_in(P, i, i + t, lo, hi, strides, keys):
                    found[i] = 1
                    break
                if i - t >= 0 and _reflect_in(P, i, i - t, lo, hi, strides, keys):
                    found[i] = 1
                    break
    out[order] = found_a.astype(bool)
    return out
