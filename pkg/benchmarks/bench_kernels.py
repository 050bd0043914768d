"""Compare the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Prints one line per kernel and workload with the best wall time of each
backend and the speed-up.  Results are checked for equality before timing.
"""
import argparse
import random
import timeit

from iwk import kernels


def workloads(rng):
    p, n, m = 3, 32, 64
    mod = p ** n
    a = [rng.randrange(mod) for _ in range(m)]
    b = [rng.randrange(mod) for _ in range(m)]
    small = [rng.randrange(1000) for _ in range(m)]
    omega = [0] + [1] * 8 + [1]  # any monic modulus of degree 9
    big = [rng.randrange(mod) for _ in range(200)]
    mat8 = [[rng.randint(-50, 50) for _ in range(8)] for _ in range(8)]
    mat14 = [[rng.randint(-50, 50) for _ in range(14)] for _ in range(14)]
    return [
        ("series_mul", "M=64 mod 3^32", (a, b, m, mod)),
        ("series_mul", "M=64 small ints", (small, small, m, 0)),
        ("poly_rem_monic", "deg 199 mod deg 9", (big, omega, mod)),
        ("det_bareiss", "8x8", (mat8,)),
        ("det_bareiss", "14x14", (mat14,)),
    ]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--number", type=int, default=200)
    args = ap.parse_args()
    py = kernels.load("python")
    try:
        cy = kernels.load("compiled")
    except ImportError:
        print("compiled extension not built; run `pip install --no-build-isolation -e .` first")
        return
    rng = random.Random(0)
    print(f"{'kernel':<16}{'workload':<22}{'python (us)':>12}{'compiled (us)':>15}{'speed-up':>10}")
    for name, label, args_ in workloads(rng):
        fp, fc = getattr(py, name), getattr(cy, name)
        if fp(*args_) != fc(*args_):
            raise SystemExit(f"backends disagree on {name} ({label})")
        tp = min(timeit.repeat(lambda: fp(*args_), number=args.number, repeat=args.repeat)) / args.number
        tc = min(timeit.repeat(lambda: fc(*args_), number=args.number, repeat=args.repeat)) / args.number
        print(f"{name:<16}{label:<22}{tp * 1e6:>12.1f}{tc * 1e6:>15.1f}{tp / tc:>9.2f}x")


if __name__ == "__main__":
    main()
