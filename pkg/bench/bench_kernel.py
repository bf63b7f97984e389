"""Compare the compiled and pure-Python module kernels.

    python bench/bench_kernel.py [--n 3] [--q 2] [--B 6] [--reps 300]
"""

import argparse
import random
import statistics
import time

from umlattice import kernel


def random_gens(rng, n, N, q, count):
    return [[rng.randrange(q) if rng.random() < 0.3 else 0 for _ in range(n * N)] for _ in range(count)]


def time_op(fn, args_list):
    out = []
    for args in args_list:
        t = time.perf_counter()
        fn(*args)
        out.append(time.perf_counter() - t)
    return statistics.median(out) * 1e6


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--B", type=int, default=6)
    ap.add_argument("--reps", type=int, default=300)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    n, q, N = a.n, a.q, 2 * a.B
    rng = random.Random(a.seed)
    backends = kernel.backends()
    print(f"n={n} q={q} B={a.B} reps={a.reps} backends={sorted(backends)}")
    gens = [random_gens(rng, n, N, q, 2 * n) for _ in range(a.reps)]
    ref = backends["python"]
    mods = [ref.hermite(g, n, N, q) for g in gens]
    pairs = list(zip(mods, mods[1:]))
    print(f"{'op':10s}" + "".join(f"{b:>14s}" for b in sorted(backends)) + "   (median us)")
    for op in ("hermite", "join", "meet", "contains"):
        row = []
        for name in sorted(backends):
            m = backends[name]
            if op == "hermite":
                args = [(g, n, N, q) for g in gens]
            elif op == "contains":
                args = [(e, d, g[0], n, N, q) for (e, d), g in zip(mods, gens)]
            else:
                args = [(e1, d1, e2, d2, n, N, q) for (e1, d1), (e2, d2) in pairs]
            row.append(time_op(getattr(m, op), args))
        print(f"{op:10s}" + "".join(f"{t:14.1f}" for t in row))


if __name__ == "__main__":
    main()
