"""Timing comparison of the numba and numpy kernel paths.

Runs each hot summation kernel on realistic tanh-sinh node sets and times
the compiled loop against the vectorized numpy fallback, then times a few
whole-pipeline operations under the currently selected backend.

Usage:
    python benchmarks/bench_kernels.py [--repeat 200]

Force a backend for the pipeline section with TWOCENTER_NUMBA=0/1 before
launching; the kernel section always measures both paths when numba is
importable.
"""

import argparse
import time

import numpy as np

from twocenter import _kernels
from twocenter.quadrature import _interval_nodes


def _time(fn, repeat):
    fn()                                     # warm-up / jit compile
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn()
    return (time.perf_counter() - t0) / repeat


def bench_kernels(repeat):
    try:
        import numba
    except ImportError:
        numba = None

    x, da, db, w = _interval_nodes(0.0, 2.0, 8)
    print(f"node set: {x.size} tanh-sinh nodes (level 8)")
    cases = [
        ("quartic_sum", _kernels.quartic_sum_numpy,
         _kernels._quartic_sum_loop, (x, da, db, w, 1.0, -1.2, 1.0)),
        ("four_factor_sum", _kernels.four_factor_sum_numpy,
         _kernels._four_factor_sum_loop, (da, db, w, 1.5, 1.0, 2.0, 1.0)),
        ("jacobi_alpha_sum", _kernels.jacobi_alpha_sum_numpy,
         _kernels._jacobi_alpha_sum_loop, (da, db, w, 0.0, 2.0, 0.7)),
        ("jacobi_beta_sum", _kernels.jacobi_beta_sum_numpy,
         _kernels._jacobi_beta_sum_loop, (da, db, w, 1.3, 1.0, 2.0, 1.0)),
        ("q_power_sum", _kernels.q_power_sum_numpy,
         _kernels._q_power_sum_loop, (x, da, db, w, 3, 2, 1.0, 0.4, 1.0)),
    ]
    header = f"{'kernel':<20}{'numpy':>12}{'numba':>12}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, f_np, f_loop, args in cases:
        t_np = _time(lambda: f_np(*args), repeat)
        if numba is not None:
            jitted = numba.njit(cache=True)(f_loop)
            t_nb = _time(lambda: jitted(*args), repeat)
            print(f"{name:<20}{t_np * 1e6:>10.2f}us{t_nb * 1e6:>10.2f}us"
                  f"{t_np / t_nb:>9.2f}x")
        else:
            print(f"{name:<20}{t_np * 1e6:>10.2f}us{'n/a':>12}{'':>10}")


def bench_pipeline(repeat):
    from twocenter import NormalizedParams, SystemParams, t_down, t_up, \
        jacobi_t_plus
    from twocenter.monotonicity import s_down
    from twocenter._backend import NUMBA_ENABLED

    print(f"\npipeline (backend: {'numba' if NUMBA_ENABLED else 'numpy'})")
    n_down = NormalizedParams(M=1.0, delta0_hat=1.0, F0_hat=0.5)
    n_up = NormalizedParams(M=1.0, delta0_hat=1.0, F0_hat=1.2)
    p = SystemParams(m_plus=1.0, m_minus=0.3, v0=1.0, J0=-0.3, F0=2.0)
    cases = [
        ("t_down", lambda: t_down(n_down)),
        ("t_up (both forms)", lambda: t_up(n_up)),
        ("jacobi_t_plus", lambda: jacobi_t_plus(p)),
        ("s_down", lambda: s_down(1.0, 1.0, 0.0)),
    ]
    for name, fn in cases:
        print(f"{name:<20}{_time(fn, max(5, repeat // 20)) * 1e3:>10.3f} ms")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=200)
    args = ap.parse_args()
    bench_kernels(args.repeat)
    bench_pipeline(args.repeat)
