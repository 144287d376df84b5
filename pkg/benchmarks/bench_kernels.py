"""Numba vs numpy timing of the two hot kernels and of a full detector batch.

Usage::

    python3 benchmarks/bench_kernels.py [--n 20000] [--repeat 5]

The end-to-end line runs the two-slot detector in a subprocess for each
backend (the backend is fixed at import time by PNSIMO_DISABLE_NUMBA).
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from pnsimo import kernels
from pnsimo.phase_noise import fourier_von_mises

E2E = """
import timeit, numpy as np
from pnsimo import _accel
from pnsimo.channel import CC, NONSYNC, Scenario, psk, simulate_batch, substream
from pnsimo.detectors import two_slot_batch
from pnsimo.phase_noise import fourier_von_mises
scn = Scenario(CC, NONSYNC, 10.0 ** 2.2, 6, psk(4), fourier_von_mises(4.0))
sym = substream(0, 0).integers(0, 4, ({n}, 1))
x, y, _ = simulate_batch(scn, sym, substream(0, 1))
two_slot_batch(scn, x[:16], y[:16])
t = min(timeit.repeat(lambda: two_slot_batch(scn, x, y), number=1, repeat={repeat}))
print(_accel.backend(), t)
"""


def best(fn, repeat):
    fn()  # warm-up (includes JIT compilation)
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=20_000, help="evaluations per kernel call")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    n, order = args.n, 24

    rng = np.random.default_rng(0)
    x = rng.uniform(0.0, 400.0, n)
    log0 = rng.normal(size=n)
    _, ra = kernels.bessel_table_numpy(x, order)
    _, rb = kernels.bessel_table_numpy(rng.uniform(0.0, 400.0, n), order)
    alpha = fourier_von_mises(4.0, order).coeffs[None, :]
    rows = np.zeros(n, dtype=np.int64)
    zeta = rng.uniform(-np.pi, np.pi, n)

    cases = {
        "bessel_table": (
            lambda: kernels.bessel_table_numba(x, order),
            lambda: kernels.bessel_table_numpy(x, order),
        ),
        "log_series": (
            lambda: kernels.log_series_numba(log0, ra, rb, alpha, rows, zeta, 1e-12, 2, order),
            lambda: kernels.log_series_numpy(log0, ra, rb, alpha, rows, zeta, 1e-12, 2, order),
        ),
    }
    print(f"{'kernel':<14} {'numba [ms]':>11} {'numpy [ms]':>11} {'speedup':>8}   (n = {n})")
    for name, (fast, slow) in cases.items():
        if kernels.bessel_table_numba is None:
            print(f"{name:<14} {'n/a':>11} {best(slow, args.repeat) * 1e3:11.2f}")
            continue
        tf, ts = best(fast, args.repeat), best(slow, args.repeat)
        print(f"{name:<14} {tf * 1e3:11.2f} {ts * 1e3:11.2f} {ts / tf:7.1f}x")

    times = {}
    for disable in ("0", "1"):
        env = dict(os.environ, PNSIMO_DISABLE_NUMBA=disable)
        out = subprocess.run(
            [sys.executable, "-c", E2E.format(n=n // 4, repeat=args.repeat)],
            env=env, capture_output=True, text=True, check=True,
        ).stdout.split()
        times[out[0]] = float(out[1])
    line = "  ".join(f"{k} {v * 1e3:.1f} ms" for k, v in times.items())
    print(f"two_slot_batch CC-NS M=6 22 dB, {n // 4} trials: {line}")


if __name__ == "__main__":
    main()
