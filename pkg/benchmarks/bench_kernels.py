"""Compare the numpy and numba closure kernels.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]

Each row is the best wall time over ``--repeat`` runs, after one warm-up
call so JIT compilation is not counted.
"""

import argparse
import time

import numpy as np

from aggtransform import kernels


def best_time(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def monotone(shape, rng):
    v = rng.random(shape)
    for axis in range(len(shape)):
        v = np.cumsum(v, axis=axis)
    return v - v.flat[0]


def main():
    p = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--quick", action="store_true", help="small sizes only")
    args = p.parse_args()

    rng = np.random.default_rng(0)
    cases = [("1d", (1025,)), ("1d", (8193,)), ("2d", (33, 33)), ("3d", (17, 17, 17))]
    if not args.quick:
        cases += [("1d", (32769,)), ("2d", (65, 65)), ("3d", (33, 33, 33))]
    backends = kernels.available_backends()
    print(f"threads={kernels.thread_count()}  backends={','.join(backends)}")
    print(f"{'case':>5} {'shape':>14} {'pair visits':>12} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    for kind, shape in cases:
        a = monotone(shape, rng)
        kernel = kernels.closure_1d if kind == "1d" else kernels.closure_nd
        results, times = [], []
        for b in backends:
            times.append(best_time(lambda: kernel(a, True, b), args.repeat))
            results.append(kernel(a, True, b))
        if len(results) == 2:
            assert all(np.array_equal(x, y) for x, y in zip(*results)), "backends disagree"
        speed = f"{times[0] / times[-1]:8.1f}x" if len(times) == 2 else ""
        print(f"{kind:>5} {str(shape):>14} {kernels.pair_visits(shape):>12.3g} "
              + " ".join(f"{t:>9.4f}s" for t in times) + f"  {speed}")


if __name__ == "__main__":
    main()
