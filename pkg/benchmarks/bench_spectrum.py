"""Compare the pure-Python and compiled spectrum kernels.

Usage: python3 benchmarks/bench_spectrum.py
"""

import random
import sys
import time
from itertools import combinations
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from bergelab import _spectrum as pure  # noqa: E402

try:
    from bergelab import _spectrum_cy as compiled  # noqa: E402
except ImportError:
    compiled = None


BUDGET = 3 * 10**6  # hard node cap; both kernels hit it identically


def instances():
    yield "K_7^(3) full spectrum", 7, tuple(combinations(range(7), 3)), 7
    yield "K_8^(3) full spectrum", 8, tuple(combinations(range(8), 3)), 8
    rng = random.Random(7)
    universe = list(combinations(range(12), 3))
    rng.shuffle(universe)
    yield "random 3-graph n=12 m=60", 12, tuple(sorted(universe[:60])), 12
    universe = list(combinations(range(16), 3))
    rng.shuffle(universe)
    yield "random 3-graph n=16 m=90", 16, tuple(sorted(universe[:90])), 14
    pairs = [(i, 16 + j) for i in range(16) for j in range(16)]
    yield "K_16,16 as 2-graph", 32, tuple(pairs), 12


def bench(fn, n, edges, max_len, repeat=3):
    best = None
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(n, edges, 3, max_len, BUDGET)
        dt = time.perf_counter() - t0
        best = dt if best is None or dt < best else best
    return best, out


def main():
    if compiled is None:
        print("compiled kernel not built; run: python3 setup.py build_ext --inplace")
    print(f"{'instance':34} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}  nodes")
    for name, n, edges, max_len in instances():
        tp, outp = bench(pure.spectrum_search, n, edges, max_len)
        if compiled is not None:
            tc, outc = bench(compiled.spectrum_search, n, edges, max_len)
            assert outp == outc, f"kernel mismatch on {name}"
            print(f"{name:34} {tp:10.4f} {tc:13.4f} {tp / tc:8.1f}x  {outp[1]}")
        else:
            print(f"{name:34} {tp:10.4f} {'-':>13} {'-':>8}  {outp[1]}")


if __name__ == "__main__":
    main()
