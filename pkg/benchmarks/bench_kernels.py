"""Time the compiled kernels against the numpy fallback.

Run with ``python3 benchmarks/bench_kernels.py``; pin to one core with
``taskset -c 0`` for comparable numbers.  Also checks that both backends
agree to 1e-9 relative (ADR cancels) before timing.
"""

import argparse
import importlib
import os
import timeit

import numpy as np

os.environ.setdefault("OMP_NUM_THREADS", "1")
os.environ.setdefault("OPENBLAS_NUM_THREADS", "1")

from evdkit import TABLE3_PRESETS, sample  # noqa: E402
from evdkit import _kernels_py  # noqa: E402


def _load_compiled():
    try:
        return importlib.import_module("evdkit._kernels")
    except ImportError:
        return None


def bench(n: int, repeat: int):
    cy = _load_compiled()
    if cy is None:
        print("compiled extension not built; only the python backend is available")
    rows = []
    for label, spec in TABLE3_PRESETS.items():
        code, par = spec.family.code, np.asarray(spec.params, dtype=float)
        x = sample(spec, n, 1)
        z = np.sort(np.clip(_kernels_py.cdf(code, par, x), 1e-12, 1 - 1e-12))
        cases = {
            "loglik": lambda k: k.loglik(code, par, x),
            "cdf": lambda k: k.cdf(code, par, x),
            "ad_stats": lambda k: k.ad_stats(z),
        }
        for name, fn in cases.items():
            t_py = min(timeit.repeat(lambda: fn(_kernels_py), number=1, repeat=repeat))
            if cy is not None:
                a, b = np.asarray(fn(_kernels_py), float), np.asarray(fn(cy), float)
                if not np.allclose(a, b, rtol=1e-9, atol=1e-300):
                    raise SystemExit(f"backend mismatch for {label}/{name}")
                t_cy = min(timeit.repeat(lambda: fn(cy), number=1, repeat=repeat))
            else:
                t_cy = float("nan")
            rows.append((label, name, t_py, t_cy))
    print(f"n = {n}, best of {repeat}")
    print(f"{'law':>6} {'kernel':>9} {'python ms':>10} {'cython ms':>10} {'speed-up':>9}")
    for label, name, t_py, t_cy in rows:
        print(f"{label:>6} {name:>9} {1e3 * t_py:10.3f} {1e3 * t_cy:10.3f} {t_py / t_cy:9.2f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=500)
    ap.add_argument("--repeat", type=int, default=50)
    args = ap.parse_args()
    bench(args.n, args.repeat)
