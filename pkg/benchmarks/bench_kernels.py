"""Compare the compiled and pure-Python polynomial kernels.

Runs each kernel on the same random dense polynomials over Q and reports the
best of several repeats.  Usage: ``python benchmarks/bench_kernels.py``.
"""
import argparse
import random
import timeit

from gmpy2 import mpq

from knotsplit import _kernels_py

try:
    from knotsplit import _kernels
except ImportError:
    _kernels = None


def rand_poly(rng, deg):
    return [mpq(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(deg)] + [mpq(1)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--degree", type=int, default=40)
    ap.add_argument("--number", type=int, default=200)
    args = ap.parse_args()
    rng = random.Random(0)
    a, b = rand_poly(rng, args.degree), rand_poly(rng, args.degree // 2)
    cases = {
        "mul": lambda k: k.mul(a, b),
        "divmod": lambda k: k.divmod_(k.mul(a, b), b),
        "horner": lambda k: k.horner(a, mpq(3, 7)),
        "sign_changes": lambda k: k.sign_changes([a, b, a], mpq(1, 3)),
    }
    backends = [("python", _kernels_py)] + ([("cython", _kernels)] if _kernels else [])
    print(f"{'kernel':<14}" + "".join(f"{n:>12}" for n, _ in backends) + ("     speedup" if _kernels else ""))
    for name, fn in cases.items():
        times = [min(timeit.repeat(lambda: fn(k), number=args.number, repeat=5)) / args.number for _, k in backends]
        row = f"{name:<14}" + "".join(f"{1e6 * x:>10.1f}us" for x in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>11.2f}x"
        print(row)


if __name__ == "__main__":
    main()
