"""Compare the compiled and pure-Python search and canonicalization kernels.

    python3 benchmarks/bench_kernels.py [--max-order 5] [--repeat 3]
"""

import argparse
import time

from skewlat import kernels
from skewlat.enumerate import EnumerationSpec, canonical_form, enumerate_algebras


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-order", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.available()
    print(f"backends: {', '.join(backends)}")
    if "cython" not in backends:
        print("compiled extension not built; only the Python kernel is timed")
    print(f"{'task':<22}{'order':>6}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for n in range(2, args.max_order + 1):
        row = {}
        counts = set()
        for b in backends:
            k = kernels.get(b)
            t, raw = best_of(lambda: k.search(n), args.repeat)
            row[b] = t
            counts.add(len(raw))
        assert len(counts) == 1, "backends disagree"
        speed = f"{row['python'] / row['cython']:.1f}x" if "cython" in row and row["cython"] > 0 else "-"
        print(f"{'search (labelled)':<22}{n:>6}" + "".join(f"{row[b]:>11.3f}s" for b in backends) + f"{speed:>10}")
    for n in range(2, args.max_order + 1):
        algebras = list(enumerate_algebras(EnumerationSpec(n)))
        row = {}
        for b in backends:
            t, _ = best_of(lambda: [canonical_form(S, b) for S in algebras], args.repeat)
            row[b] = t
        speed = f"{row['python'] / row['cython']:.1f}x" if "cython" in row and row["cython"] > 0 else "-"
        print(f"{'canonical forms':<22}{n:>6}" + "".join(f"{row[b]:>11.3f}s" for b in backends) + f"{speed:>10}")


if __name__ == "__main__":
    main()
