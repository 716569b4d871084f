"""Benchmark the compiled float64 kernels against the pure-Python fallback.

Asserts bitwise-identical output first (the two implementations promise the
same operation sequence), then times both on a large method-S table and a
large Levin/Weniger table.

Run:  python3 benchmarks/bench_kernels.py [--terms 2000] [--kmax 30]
"""

import argparse
import time

import numpy as np

from accelseries.kernels import HAVE_SPEEDUPS, _fallback

if HAVE_SPEEDUPS:
    from accelseries.kernels import _speedups


def _terms(count):
    # alpha_n = 1/(n+1): well-conditioned, no overflow for any budget
    return np.array([1.0 / (n + 1) for n in range(count)], dtype=np.float64)


def _time(fn, *args, repeats=5):
    best = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        dt = time.perf_counter() - t0
        if best is None or dt < best:
            best = dt
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--terms", type=int, default=2000)
    parser.add_argument("--kmax", type=int, default=30)
    args = parser.parse_args()

    alpha = _terms(args.terms + 1)
    K = args.kmax

    if not HAVE_SPEEDUPS:
        print("compiled kernels not available; nothing to compare (fallback only)")
        t = _time(_fallback.method_s_table, alpha, K)
        print(f"fallback method_s_table:       {t * 1e3:8.2f} ms")
        t = _time(_fallback.levin_weniger_table, alpha, K, True, 1.0)
        print(f"fallback levin_weniger_table:  {t * 1e3:8.2f} ms")
        return

    checks = [
        ("method_s_table", (alpha, K), _fallback.method_s_table, _speedups.method_s_table),
        (
            "levin_weniger_table[weniger]",
            (alpha, K, True, 1.0),
            _fallback.levin_weniger_table,
            _speedups.levin_weniger_table,
        ),
        (
            "levin_weniger_table[levin]",
            (alpha, K, False, 1.0),
            _fallback.levin_weniger_table,
            _speedups.levin_weniger_table,
        ),
    ]
    print(f"terms={args.terms} kmax={K}")
    for name, call_args, slow, fast in checks:
        a = slow(*call_args)
        b = fast(*call_args)
        identical = np.array_equal(
            a.view(np.uint64), b.view(np.uint64)
        )  # NaN-safe bit comparison
        if not identical:
            raise SystemExit(f"MISMATCH: {name} differs between fallback and compiled")
        t_slow = _time(slow, *call_args)
        t_fast = _time(fast, *call_args)
        print(
            f"{name:<30} bitwise-identical  "
            f"fallback {t_slow * 1e3:8.2f} ms   compiled {t_fast * 1e3:8.2f} ms   "
            f"speedup {t_slow / t_fast:6.1f}x"
        )


if __name__ == "__main__":
    main()
