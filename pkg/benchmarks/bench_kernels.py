"""Time the compiled image-series kernels against the numpy fallback.

Both backends are imported directly, so one process measures both
regardless of which one wallfade.kernels selected.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from wallfade import _kernels_py

try:
    from wallfade import _kernels
except ImportError:
    _kernels = None


def _workload(n: int, seed: int):
    rng = np.random.default_rng(seed)
    x = rng.uniform(-0.45, 0.45, n)
    y = rng.uniform(-0.5, 0.5, n)
    return x, y


def _best_of(fn, repeats: int) -> float:
    best = np.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=20_000,
                        help="transmitter positions per call")
    parser.add_argument("--repeats", type=int, default=5,
                        help="timing repetitions, best one reported")
    parser.add_argument("--kappa", type=float, default=0.5)
    parser.add_argument("--k", type=float, default=100.0)
    parser.add_argument("--beta", type=float, default=4.0)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    x, y = _workload(args.points, args.seed)
    call_args = (x, y, 0.5, 0.5, args.kappa, args.k, args.beta, 1e-12, 10**6)
    bound_args = (x, y, 0.5, 0.5, args.kappa, args.beta, 1e-12, 10**6)

    rows = []
    for name, fn_args in (
        ("reflected_amplitude", call_args),
        ("bound_sum", bound_args),
    ):
        py_fn = getattr(_kernels_py, name)
        t_py = _best_of(lambda: py_fn(*fn_args), args.repeats)
        if _kernels is None:
            rows.append((name, t_py, None, None))
            continue
        c_fn = getattr(_kernels, name)
        out_c = c_fn(*fn_args)
        out_py = py_fn(*fn_args)
        np.testing.assert_allclose(out_c[0], out_py[0], rtol=1e-12, atol=1e-12)
        t_c = _best_of(lambda: c_fn(*fn_args), args.repeats)
        rows.append((name, t_py, t_c, t_py / t_c))

    print(f"points={args.points} kappa={args.kappa} k={args.k} "
          f"beta={args.beta} repeats={args.repeats}")
    header = f"{'kernel':<22}{'python':>12}{'cython':>12}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, t_py, t_c, speed in rows:
        if t_c is None:
            print(f"{name:<22}{t_py * 1e3:>10.2f}ms{'n/a':>12}{'n/a':>10}")
        else:
            print(f"{name:<22}{t_py * 1e3:>10.2f}ms{t_c * 1e3:>10.2f}ms"
                  f"{speed:>9.1f}x")
    if _kernels is None:
        print("compiled extension not available; build it to compare")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
