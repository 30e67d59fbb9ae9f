"""Time the Hom enumeration kernel under each backend.

    python benchmarks/bench_hom_kernel.py [--repeat 5]

The numba backend is warmed up once before timing so compilation is reported
separately.  Every backend must return the same counts; the script exits 1 if
they ever disagree.
"""
import argparse
import random
import statistics
import sys
import time

from locprime import _kernels, oracle
from locprime.harness import PROFILES, scramble
from locprime.module import from_invariants
from locprime.ring import make_context

Z = make_context("int")
F2 = make_context("poly", 2)

# (label, source invariants, target invariants); the search space is |N|^gens(M)
CASES = [
    ("Z/4 -> Z/6", (Z, [4]), (Z, [6])),
    ("(Z/2)^3 -> Z/2+Z/4+Z/4", (Z, [2, 2, 2]), (Z, [2, 4, 4])),
    ("Z/2+Z/6+Z/12 -> Z/6+Z/6", (Z, [2, 6, 12]), (Z, [6, 6])),
    ("Z/3+Z/9+Z/9 -> Z/3+Z/9", (Z, [3, 9, 9]), (Z, [3, 9])),
    ("(F2[x]/x^2)^3 -> F2[x]/x^5", (F2, [(0, 0, 1)] * 3), (F2, [(0, 0, 0, 0, 0, 1)])),
]


def scrambled(ctx, factors):
    # unimodular mixing, so the kernel sees dense relation rows instead of a diagonal
    return scramble(random.Random(0), from_invariants(ctx, factors), PROFILES["small"])


def time_backend(M, N, backend, repeat):
    runs = []
    sig = None
    for _ in range(repeat):
        t = time.perf_counter()
        sig = oracle.hom_signature(M, N, backend=backend)
        runs.append(time.perf_counter() - t)
    return sig, statistics.median(runs)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--python", action="store_true", help="also time the plain-Python reference loop")
    args = ap.parse_args(argv)

    backends = ["numpy"]
    if _kernels.numba is not None:
        backends.insert(0, "numba")
        t = time.perf_counter()
        oracle.hom_signature(from_invariants(Z, [2]), from_invariants(Z, [2]), backend="numba")
        print(f"numba compile + first call: {time.perf_counter() - t:.2f}s")
    else:
        print("numba not installed; timing numpy only")
    if args.python:
        backends.append("python")

    print(f"{'case':<30} {'maps':>6}" + "".join(f" {b:>10}" for b in backends))
    mismatch = False
    for label, (cm, fm), (cn, fn) in CASES:
        M, N = scrambled(cm, fm), from_invariants(cn, fn)
        row, sigs = [], set()
        for b in backends:
            sig, dt = time_backend(M, N, b, args.repeat)
            sigs.add(sig)
            row.append(f" {dt * 1e3:>8.2f}ms")
        mismatch |= len(sigs) != 1
        print(f"{label:<30} {next(iter(sigs)).size:>6}" + "".join(row))
    if mismatch:
        print("backends disagree", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
