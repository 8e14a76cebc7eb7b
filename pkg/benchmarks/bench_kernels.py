"""Compare the compiled and pure-Python kernels on the hot loops.

    python3 benchmarks/bench_kernels.py [--group hexagon] [--radius 3] [--words 20000]
"""

import argparse
import random
import time

from racg import geometry, kernels
from racg.harness import builtin_group


def timed(fn, *args):
    start = time.perf_counter()
    out = fn(*args)
    return time.perf_counter() - start, out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--group", default="hexagon")
    parser.add_argument("--radius", type=int, default=3, help="ball radius for the scan kernels")
    parser.add_argument("--words", type=int, default=20000, help="random words to normalize")
    parser.add_argument("--length", type=int, default=16)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    if not kernels.compiled_available():
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation`")

    g = builtin_group(args.group)
    rng = random.Random(args.seed)
    words = [bytes(rng.randrange(g.rank) for _ in range(args.length)) for _ in range(args.words)]
    B = geometry.ball(g, args.radius)
    flat, offsets = B.packed
    n = len(B)
    rows = min(n, 8)

    cases = [
        (f"normal_form x{len(words)}", lambda k: [k.normal_form(w) for w in words]),
        (f"distance_rows {n}x{n}", lambda k: k.distance_rows(flat, offsets, 0, n)),
        (f"median_scan {rows} rows of {n}", lambda k: k.median_scan(flat, offsets, 0, rows)),
        (f"rooted_median_scan {n}", lambda k: k.rooted_median_scan(flat, offsets, 0, n)),
    ]
    print(f"{args.group}, ball radius {args.radius} ({n} elements)")
    print(f"{'kernel':32} {'cython s':>10} {'python s':>10} {'speedup':>9}")
    for label, fn in cases:
        t_cy, out_cy = timed(fn, kernels.make_kernel(g.masks, "cython"))
        t_py, out_py = timed(fn, kernels.make_kernel(g.masks, "python"))
        same = out_cy == out_py if isinstance(out_cy, (list, tuple)) else (out_cy == out_py).all()
        if not same:
            raise SystemExit(f"backends disagree on {label}")
        print(f"{label:32} {t_cy:10.4f} {t_py:10.4f} {t_py / max(t_cy, 1e-9):8.1f}x")


if __name__ == "__main__":
    main()
