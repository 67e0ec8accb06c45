"""Throughput comparison of the two Monte Carlo kernels.

Runs the same batch through the compiled extension and the pure-Python
fallback, reports games/second for each, and verifies the accumulated
sums are identical (they must be: both implement the same keyed
generator draw-for-draw).

    python3 benchmarks/bench_mc.py --n 1000000
"""

import argparse
import time

from servelab import _mc_fallback
from servelab.simulate import mc_backend
from servelab.types import ServeProfile, rule_c, rule_t

try:
    from servelab import _mc_kernel
except ImportError:
    _mc_kernel = None


def bench(kernel, label, seed, n, prefix, cycle):
    t0 = time.perf_counter()
    sums = kernel.run_batch(seed, 0, n, prefix, cycle, True, 10**6)
    dt = time.perf_counter() - t0
    print(f"  {label:12s} {n / dt:12.0f} games/s   ({dt:.3f}s)")
    return sums


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=1_000_000, help="games per batch")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    configs = [
        ("T, p=0.62", rule_t(), ServeProfile(0.62, 0.62)),
        ("C(3), (0.696, 0.55)", rule_c(3), ServeProfile(0.696, 0.55)),
    ]
    print(f"active backend: {mc_backend()}")
    for name, sched, prof in configs:
        print(f"\n{name}, n={args.n}:")
        prefix = sched.prefix_probs(prof)
        cycle = sched.cycle_probs(prof)
        if _mc_kernel is None:
            print("  compiled kernel not built; showing fallback only")
            bench(_mc_fallback, "pure-python", args.seed, args.n, prefix, cycle)
            continue
        fast = bench(_mc_kernel, "compiled", args.seed, args.n, prefix, cycle)
        # fallback at 1/10 scale so the comparison stays quick, then a
        # full-size equality check at a smaller n
        slow_n = max(args.n // 10, 1)
        bench(_mc_fallback, "pure-python", args.seed, slow_n, prefix, cycle)
        check_n = min(args.n, 20_000)
        a = _mc_kernel.run_batch(args.seed, 0, check_n, prefix, cycle, True, 10**6)
        b = _mc_fallback.run_batch(args.seed, 0, check_n, prefix, cycle, True, 10**6)
        if a != b:
            raise SystemExit(f"kernel mismatch on {name}: {a} != {b}")
        print(f"  sums identical across backends for n={check_n}")


if __name__ == "__main__":
    main()
