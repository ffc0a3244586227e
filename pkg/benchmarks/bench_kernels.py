"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N] [--quick]

Each workload runs on both backends with identical inputs; the table shows
the best wall time over ``--repeat`` runs and the speedup of the compiled
module.  Results are checked for equality before timing is reported.
"""
from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from logcave import kernels
from logcave.seqops import Parity, SymmetricSeq
from logcave.sweep import GridSpec


def sweep_cells(backend, cells, parity, max_iter, budget):
    out = []
    for coords in cells:
        nums, _ = kernels.to_scaled(SymmetricSeq(coords, parity).expand())
        out.append(backend.classify_scaled(nums, max_iter, budget))
    return out


def big_apply(backend, nums, rounds):
    for _ in range(rounds):
        nums = backend.apply_l_int(nums)
    return nums[len(nums) // 2].bit_length()


def region_many(backend, seqs):
    return sum(backend.in_region_int(s) for s in seqs)


def workloads(quick: bool):
    step = Fraction(1) if quick else Fraction(1, 2)
    spec = GridSpec(Parity.EVEN, 1, ((1, 20), (1, 40)), (step, step), max_iter=20)
    cells = list(spec.cells())
    yield (
        f"sweep even n=1, {len(cells)} cells",
        lambda b: sweep_cells(b, cells, Parity.EVEN, 20, 10**6),
    )
    odd = GridSpec(Parity.ODD, 1, ((1, 15), (1, 25)), (step, step), max_iter=20)
    odd_cells = list(odd.cells())
    yield (
        f"sweep odd n=1, {len(odd_cells)} cells",
        lambda b: sweep_cells(b, odd_cells, Parity.ODD, 20, 10**6),
    )
    seed = [1, 7, 21, 35, 35, 21, 7, 1]
    rounds = 12 if quick else 15
    yield (f"apply_L x{rounds} on {{1,7,21,35,..}}", lambda b: big_apply(b, seed, rounds))
    small = [SymmetricSeq((Fraction(a), Fraction(b), Fraction(c)), Parity.EVEN).expand() for a in range(2, 30) for b in range(a, 80, 3) for c in range(b, 200, 7)]
    small = [kernels.to_scaled(s)[0] for s in small]
    yield (f"in_region on {len(small)} small vectors", lambda b: region_many(b, small))


def best_time(fn, repeat):
    best = float("inf")
    value = None
    for _ in range(repeat):
        start = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - start)
    return best, value


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--quick", action="store_true", help="smaller grids")
    args = parser.parse_args(argv)
    if kernels.compiled is None:
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1
    py = kernels.backend_module("python")
    cy = kernels.backend_module("cython")
    print(f"{'workload':44s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for name, run in workloads(args.quick):
        t_py, v_py = best_time(lambda: run(py), args.repeat)
        t_cy, v_cy = best_time(lambda: run(cy), args.repeat)
        if v_py != v_cy:
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        print(f"{name:44s} {t_py:10.4f} {t_cy:10.4f} {t_py / t_cy:7.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
