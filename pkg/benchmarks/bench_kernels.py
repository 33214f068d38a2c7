"""Compare the compiled and numpy kernels on the GL_3(F_5) scan and coset counting.

Run with ``python3 benchmarks/bench_kernels.py``.
"""
import argparse
import time

from liezeta import autgroup, kernels


def timed(fn, *args, **kw):
    t = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, default=5)
    ap.add_argument("--slices", type=int, default=1, help="top-left values scanned")
    args = ap.parse_args()
    T = autgroup.kernel_tensors(args.q)
    backends = kernels.available_backends()
    print(f"backends: {backends} (default {kernels.BACKEND})")
    results = {}
    for b in backends:
        (found, surv), dt = timed(kernels.scan_gl3, args.q, T, 1, 1 + args.slices, backend=b)
        results[b] = sorted(found)
        print(f"scan_gl3   q={args.q} slices={args.slices} [{b:6s}] {dt:8.3f}s  "
              f"realizable={len(found)} survivors={surv}")
    if len(set(map(tuple, results.values()))) > 1:
        raise SystemExit("backends disagree")
    for p, K, vals in ((7, 8, [3, 5]), (5, 10, [4])):
        counts = {}
        for b in backends:
            counts[b], dt = timed(kernels.count_cosets, p, K, vals, backend=b)
            print(f"count_cosets p={p} K={K} v={vals} [{b:6s}] {dt:8.3f}s  count={counts[b]}")
        if len(set(counts.values())) > 1:
            raise SystemExit("backends disagree")


if __name__ == "__main__":
    main()
