"""Time the irreducibility kernels on lattice sets of growing boxes.

    python benchmarks/bench_kernels.py --repeat 3
"""
import argparse
import time

import numpy as np

from irrpoints.kernels import BACKENDS
from irrpoints.polytope import Box, enumerate_lattice

CASES = [
    ("skew-small", Box([[3, -1], [-1, 4]], [0, 8], [19, 26])),
    ("2d-skew-200", Box([[7, 3], [2, 5]], [0, 0], [200, 200])),
    ("2d-unit-120", Box([[1, 0], [0, 1]], [0, 0], [120, 120])),
    ("3d-skew-40", Box([[3, 1, 0], [1, 4, 1], [0, 1, 5]], [0, 0, 0], [40, 40, 40])),
    ("3d-unit-25", Box([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [0, 0, 0], [25, 25, 25])),
]


def bench(fn, pts, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        mask = fn(pts)
        best = min(best, time.perf_counter() - t)
    return best, np.asarray(mask, dtype=bool)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    names = sorted(BACKENDS)
    print("case".ljust(14), "points".rjust(7), *(n.rjust(10) for n in names), "speedup".rjust(8))
    for label, box in CASES:
        pts = enumerate_lattice(box).as_array()
        times, masks = {}, {}
        for n in names:
            times[n], masks[n] = bench(BACKENDS[n], pts, args.repeat)
        ref = masks[names[0]]
        assert all((m == ref).all() for m in masks.values()), f"backends disagree on {label}"
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        print(label.ljust(14), str(len(pts)).rjust(7),
              *(f"{times[n] * 1e3:9.1f}ms" for n in names), f"{speed:7.1f}x")


if __name__ == "__main__":
    main()
