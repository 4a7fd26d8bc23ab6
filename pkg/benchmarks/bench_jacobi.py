"""Time the 4x4 Hermitian eigenvalue kernels.

Compares the compiled Jacobi kernel, the pure-Python fallback and
numpy.linalg.eigvalsh on random density matrices, both one matrix at a time
(the pattern used by the state and entropy code) and as a batch.

    python benchmarks/bench_jacobi.py [--n 2000] [--repeat 3]
"""

import argparse
import time

import numpy as np

from twophoton import _jacobi_py

try:
    from twophoton import _jacobi as _jacobi_ext
except ImportError:
    _jacobi_ext = None


def random_densities(n, seed=0):
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(n, 4, 4)) + 1j * rng.normal(size=(n, 4, 4))
    rho = g @ np.conj(np.swapaxes(g, 1, 2))
    return rho / np.trace(rho, axis1=1, axis2=2).real[:, None, None]


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    ms = random_densities(args.n)
    ref = np.linalg.eigvalsh(ms)

    kernels = [("python", _jacobi_py)]
    if _jacobi_ext is not None:
        kernels.insert(0, ("cython", _jacobi_ext))
    else:
        print("compiled kernel not built; timing the fallback only")

    rows = []
    for name, k in kernels:
        single = best_of(lambda: [k.eigvalsh4(m) for m in ms], args.repeat)
        batch = best_of(lambda: k.eigvalsh4_batch(ms), args.repeat)
        err = np.max(np.abs(np.sort(k.eigvalsh4_batch(ms), axis=1) - ref))
        rows.append((name, single, batch, err))
    single = best_of(lambda: [np.linalg.eigvalsh(m) for m in ms], args.repeat)
    batch = best_of(lambda: np.linalg.eigvalsh(ms), args.repeat)
    rows.append(("numpy", single, batch, 0.0))

    print(f"{args.n} random 4x4 density matrices, best of {args.repeat}")
    print(f"{'kernel':<8} {'per call (us)':>14} {'batch (us/matrix)':>18} {'max err':>10}")
    for name, s, b, err in rows:
        print(f"{name:<8} {1e6 * s / args.n:>14.2f} {1e6 * b / args.n:>18.2f} {err:>10.1e}")
    if _jacobi_ext is not None:
        py, cy = rows[1], rows[0]
        print(f"speed-up cython/python: {py[1] / cy[1]:.0f}x per call, {py[2] / cy[2]:.0f}x batch")


if __name__ == "__main__":
    main()
