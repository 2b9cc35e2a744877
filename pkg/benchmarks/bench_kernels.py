"""Time the compiled kernels against the numpy reference.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import timeit

import numpy as np

from symplectic_euler import kernels
from symplectic_euler.groups import build_field


def cases(q):
    F = build_field(q)
    rng = np.random.default_rng(0)
    A = rng.integers(0, q, size=(2000, 4, 4), dtype=np.uint8)
    B = rng.integers(0, q, size=(2000, 4, 4), dtype=np.uint8)
    polys = rng.integers(0, q, size=(2000, 7), dtype=np.uint8)
    polys[:, -1] = 1
    return {
        "batch_matmul": lambda m: m.batch_matmul(A, B, F.add, F.mul),
        "irreducible_flags": lambda m: m.irreducible_flags(polys, F.add, F.mul, F.neg, F.inv, q),
        "x_pow_is_one": lambda m: m.x_pow_is_one(polys, q ** 6 - 1, F.add, F.mul, F.neg),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--q", type=int, default=5)
    args = ap.parse_args()
    compiled = kernels.compiled_backend()
    if compiled is None:
        print("compiled backend not built; only timing the python kernels")
    print(f"{'kernel':<20}{'python (s)':>12}{'cython (s)':>12}{'speedup':>10}")
    for name, fn in cases(args.q).items():
        t_py = min(timeit.repeat(lambda: fn(kernels.python_backend), number=1, repeat=args.repeat))
        if compiled is None:
            print(f"{name:<20}{t_py:>12.4f}{'-':>12}{'-':>10}")
            continue
        t_cy = min(timeit.repeat(lambda: fn(compiled), number=1, repeat=args.repeat))
        print(f"{name:<20}{t_py:>12.4f}{t_cy:>12.4f}{t_py / t_cy:>9.1f}x")


if __name__ == "__main__":
    main()
