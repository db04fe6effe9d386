"""Compare the compiled selection kernels against the NumPy fallback.

Times topk_select and argmax_select over vocabulary-scale score vectors,
the shape they see inside nearest-neighbor and analogy scans.  Run:

    python3 benchmarks/bench_kernels.py [--rows 200000] [--trials 50]
"""

import argparse
import time

import numpy as np

from pseudosense._kernels import BACKEND, fallback

try:
    from pseudosense._kernels import _simcore
except ImportError:
    _simcore = None


def bench(fn, args_iter, trials):
    """Best-of-3 mean microseconds per call over ``trials`` calls."""
    best = None
    for _ in range(3):
        t0 = time.perf_counter()
        for args in args_iter:
            fn(*args)
        dt = (time.perf_counter() - t0) / trials * 1e6
        best = dt if best is None else min(best, dt)
    return best


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--rows", type=int, default=200_000,
                        help="scored vocabulary size (default 200000)")
    parser.add_argument("--trials", type=int, default=50,
                        help="calls per measurement (default 50)")
    parser.add_argument("--k", type=int, default=10,
                        help="top-k size (default 10)")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    scores = [rng.standard_normal(args.rows) for _ in range(args.trials)]
    excludes = [
        np.unique(rng.integers(0, args.rows, size=8)).astype(np.int64)
        for _ in range(args.trials)
    ]

    cases = {
        f"topk_select (k={args.k})": [
            (s, args.k, e) for s, e in zip(scores, excludes)
        ],
        "argmax_select": list(zip(scores, excludes)),
    }

    backends = [("python", fallback)]
    if _simcore is not None:
        backends.append(("compiled", _simcore))
    else:
        print("note: compiled extension not built; timing the fallback only")
    print(f"rows={args.rows} trials={args.trials} active-backend={BACKEND}\n")
    print(f"{'kernel':<24}{'backend':<10}{'us/call':>10}{'speedup':>9}")
    for name, case_args in cases.items():
        base = None
        for backend_name, impl in backends:
            fn = getattr(impl, name.split()[0].split("(")[0])
            us = bench(fn, case_args, args.trials)
            if backend_name == "python":
                base = us
            rel = f"{base / us:5.1f}x" if base else ""
            print(f"{name:<24}{backend_name:<10}{us:>10.1f}{rel:>9}")

    # identical output is part of the contract, not just a test concern
    if _simcore is not None:
        s, e = scores[0], excludes[0]
        assert np.array_equal(fallback.topk_select(s, args.k, e),
                              _simcore.topk_select(s, args.k, e))
        assert fallback.argmax_select(s, e) == _simcore.argmax_select(s, e)
        print("\nbackends agree bit-for-bit on a spot check")


if __name__ == "__main__":
    main()
