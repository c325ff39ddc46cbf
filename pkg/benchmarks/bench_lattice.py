"""Time the lattice kernels on the numba and numpy backends.

    python3 benchmarks/bench_lattice.py [--radius 400] [--repeat 5]

The first numba call compiles (or loads the on-disk cache); it is run
once as a warm-up and excluded from the timings.
"""

import argparse
import statistics
import time

import numpy as np

from petrace.lattice import LatticeParams, lattice_points, numba_available
from petrace.lattice import _kernels


def timeit(fn, repeat):
    fn()
    runs = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        runs.append(time.perf_counter() - t0)
    return statistics.median(runs)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--radius", type=float, default=400.0)
    ap.add_argument("--brute-radius", type=float, default=20.0)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--tau", type=float, default=1.0, help="imaginary part of tau")
    args = ap.parse_args()

    backends = ["numpy"] + (["numba"] if numba_available() else [])
    tau = complex(0, args.tau)
    big = lattice_points(LatticeParams(tau, args.radius), half=True)
    small = lattice_points(LatticeParams(tau, args.brute_radius), half=True)
    cases = [
        (f"power sums j<=3, {big.size} points",
         lambda b: _kernels.power_sums(big, 0.25, 3, b)),
        (f"distinct-tuple e_1..e_3, {small.size} points",
         lambda b: _kernels.distinct_tuple_sums(small, 0.5, 3, b)),
    ]
    print(f"{'case':45s} " + " ".join(f"{b:>12s}" for b in backends) + "   max |diff|")
    for name, fn in cases:
        times = [timeit(lambda: fn(b), args.repeat) for b in backends]
        results = [fn(b) for b in backends]
        diff = max(float(np.max(np.abs(r - results[0]))) for r in results)
        print(f"{name:45s} " + " ".join(f"{t * 1e3:10.2f}ms" for t in times) + f"   {diff:.2e}")


if __name__ == "__main__":
    main()
