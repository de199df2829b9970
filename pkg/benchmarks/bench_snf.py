"""Compare the compiled and pure-Python Smith normal form kernels.

    python3 benchmarks/bench_snf.py [--repeat N]

Workloads: random square matrices of several sizes, and the doubled complexes
of the seeded battery (the matrices the verification run actually factors).
"""

import argparse
import random
import sys
import time

from doublecover import _backend, _pykernels
from doublecover.battery import trial_seeds
from doublecover.chain import double_cover_complex, random_minimal


def random_matrices(size, count, bound, seed):
    rng = random.Random(seed)
    return [
        tuple(tuple(rng.randint(-bound, bound) for _ in range(size)) for _ in range(size))
        for _ in range(count)
    ]


def battery_matrices(trials):
    out = []
    for s in trial_seeds(42, trials):
        for d in double_cover_complex(random_minimal(s)).boundaries:
            out.append(d.entries)
    return out


def timed(kernel, mats, certificates, repeat):
    """Best wall time over ``repeat`` runs and the number of int64 overflows
    (each of which is rerun on the Python kernel, as the dispatcher does)."""
    best = float("inf")
    for _ in range(repeat):
        overflows = 0
        start = time.perf_counter()
        for m in mats:
            rows = len(m)
            cols = len(m[0]) if rows else 0
            try:
                kernel(m, rows, cols, certificates)
            except OverflowError:
                overflows += 1
                _pykernels.snf(m, rows, cols, certificates)
        best = min(best, time.perf_counter() - start)
    return best, overflows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _backend._ckernels is None:
        print("compiled kernel not built; only the Python kernel is available", file=sys.stderr)
        return 1
    workloads = [(f"random {n}x{n} in [-9, 9] x200", random_matrices(n, 200, 9, n)) for n in (4, 8, 16)]
    workloads.append(("battery doubled complexes (200 trials)", battery_matrices(200)))
    print(f"{'workload':44} {'mode':6} {'python s':>9} {'cython s':>9} {'speedup':>8} {'fallbacks':>10}")
    for name, mats in workloads:
        for certificates in (False, True):
            py, _ = timed(_pykernels.snf, mats, certificates, args.repeat)
            cy, over = timed(_backend._ckernels.snf, mats, certificates, args.repeat)
            mode = "cert" if certificates else "diag"
            print(f"{name:44} {mode:6} {py:9.4f} {cy:9.4f} {py / cy:7.1f}x {over:>5}/{len(mats)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
