"""Time the bitmask kernels: numba against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--n 14] [--repeat 5]

Both implementations are imported directly, so the CDGAKIT_NUMBA flag does
not matter here.  Outputs are checked for equality before timing.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from cdgakit import _accel
from cdgakit.exterior import monomial_basis


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def workloads(n: int):
    k = n // 2
    src = np.array(monomial_basis(n, k)[0], dtype=np.int64)
    # relations of a dense two-step model: d e^j contains every e^{ab} with a < b < j
    gens, terms = [], []
    for j in range(n):
        for a in range(j):
            for b in range(a + 1, j):
                gens.append(j)
                terms.append((1 << a) | (1 << b))
    gens = np.array(gens, dtype=np.int64)
    terms = np.array(terms, dtype=np.int64)
    left = np.array(monomial_basis(n, 2)[0], dtype=np.int64)
    right = np.array(monomial_basis(n, k - 1)[0], dtype=np.int64)
    return (src, gens, terms), (left, right)


def main() -> None:
    p = argparse.ArgumentParser()
    p.add_argument("--n", type=int, default=12)
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args()
    if not _accel.NUMBA_AVAILABLE:
        raise SystemExit("numba is not importable")
    leib, pair = workloads(args.n)

    # warm-up compiles the numba kernels and checks agreement
    for a, b in zip(_accel.leibniz_terms_numba(*leib), _accel.leibniz_terms_numpy(*leib)):
        assert np.array_equal(a, b)
    for a, b in zip(_accel.pair_products_numba(*pair), _accel.pair_products_numpy(*pair)):
        assert np.array_equal(a, b)

    print(f"n = {args.n}, best of {args.repeat}")
    print(f"{'kernel':<16}{'size':>14}{'numba [ms]':>14}{'numpy [ms]':>14}{'speedup':>10}")
    for name, fn_nb, fn_np, data in (
        ("leibniz_terms", _accel.leibniz_terms_numba, _accel.leibniz_terms_numpy, leib),
        ("pair_products", _accel.pair_products_numba, _accel.pair_products_numpy, pair),
    ):
        t_nb = best_of(lambda: fn_nb(*data), args.repeat)
        t_np = best_of(lambda: fn_np(*data), args.repeat)
        size = f"{len(data[0])}x{len(data[-1])}"
        print(f"{name:<16}{size:>14}{t_nb * 1e3:>14.2f}{t_np * 1e3:>14.2f}{t_np / t_nb:>10.1f}")


if __name__ == "__main__":
    main()
