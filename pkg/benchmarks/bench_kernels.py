"""Compare the Python and compiled convolution kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import time

from tiltfactor import kernels
from tiltfactor.charring import full_support, weyl_character
from tiltfactor.rootsys import build_root_datum

CASES = [
    ("A2 St(p=13) x chi(6,6)", "A", 2, (12, 12), (6, 6)),
    ("A3 St(p=7) x chi(3,3,3)", "A", 3, (6, 6, 6), (3, 3, 3)),
    ("B3 St(p=5) x chi(2,2,2)", "B", 3, (4, 4, 4), (2, 2, 2)),
    ("G2 St(p=11) x chi(5,5)", "G", 2, (10, 10), (5, 5)),
    ("D4 St(p=3) x chi(1,1,1,1)", "D", 4, (2, 2, 2, 2), (1, 1, 1, 1)),
]


def bench(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.available_backends()
    print(f"default backend: {kernels.BACKEND}; available: {', '.join(backends)}")
    print(f"{'case':32} {'pairs':>12} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    for name, t, n, a, b in CASES:
        d = build_root_datum(t, n)
        left = full_support(weyl_character(d, a))
        right = full_support(weyl_character(d, b))
        times, results = [], []
        for backend in backends:
            sec, res = bench(lambda: kernels.convolve_dominant(n, left, right, backend=backend), args.repeat)
            times.append(sec)
            results.append(res)
        assert all(r == results[0] for r in results), name
        speed = f"{times[0] / times[-1]:8.1f}x" if len(times) > 1 else "     n/a"
        print(f"{name:32} {len(left) * len(right):>12} " + " ".join(f"{s:>9.3f}s" for s in times) + "  " + speed)


if __name__ == "__main__":
    main()
