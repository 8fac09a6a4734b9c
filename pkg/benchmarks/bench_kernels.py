"""Time the compiled and pure-Python kernels on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import random
import timeit

from thicklab import _purepy

try:
    from thicklab import _speedups
except ImportError:
    _speedups = None


def rect_inputs(seed=0, count=300):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        rows = cols = rng.randint(5, 9)
        masks = [rng.getrandbits(cols) | rng.getrandbits(cols) for _ in range(rows)]
        out.append((masks, cols, rng.randint(2, 4), rng.randint(2, 4)))
    return out


SEARCHES = [(4, 2, 2, 3), (4, 3, 3, 5), (4, 2, 3, 4), (5, 3, 3, 5)]


def bench(mod, repeat):
    rects = rect_inputs()
    t_rect = min(timeit.repeat(lambda: [mod.least_failing_rectangle(*a) for a in rects], number=1, repeat=repeat))
    t_search = min(timeit.repeat(lambda: [mod.search_partition(*s, 200_000) for s in SEARCHES],
                                 number=1, repeat=repeat))
    return t_rect, t_search


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = [("python", _purepy)] + ([("cython", _speedups)] if _speedups else [])
    results = {name: bench(mod, args.repeat) for name, mod in backends}
    print(f"{'backend':<8} {'rectangles':>12} {'search':>12}")
    for name, (a, b) in results.items():
        print(f"{name:<8} {a:>11.4f}s {b:>11.4f}s")
    if "cython" in results:
        (pa, pb), (ca, cb) = results["python"], results["cython"]
        print(f"speedup  {pa / ca:>11.1f}x {pb / cb:>11.1f}x")
    else:
        print("compiled extension not built; only the fallback was timed")


if __name__ == "__main__":
    main()
