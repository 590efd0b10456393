"""Compare the numba and pure-numpy k-mer kernels.

    python3 benchmarks/bench_kernels.py --n 1000000 --q 4 --k 8
"""

import argparse
import time

import numpy as np

from dbspectral import _kernels


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=1_000_000, help="string length")
    parser.add_argument("--q", type=int, default=4)
    parser.add_argument("--k", type=int, default=8)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    letters = rng.integers(0, args.q, args.n).astype(np.int64)
    print(f"n={args.n} q={args.q} k={args.k} active backend={_kernels.BACKEND}")

    t_np, counts_np = best_of(lambda: _kernels.window_counts_numpy(letters, args.k, args.q), args.repeats)
    m_np, marg_np = best_of(lambda: _kernels.edge_marginals_numpy(counts_np, args.q), args.repeats)
    print(f"numpy  window_counts {t_np * 1e3:9.2f} ms   edge_marginals {m_np * 1e3:8.3f} ms")

    if _kernels.window_counts_numba is None:
        print("numba  not installed")
        return 0
    # first call compiles
    _kernels.window_counts_numba(letters[:10], args.k, args.q)
    _kernels.edge_marginals_numba(counts_np, args.q)
    t_nb, counts_nb = best_of(lambda: _kernels.window_counts_numba(letters, args.k, args.q), args.repeats)
    m_nb, marg_nb = best_of(lambda: _kernels.edge_marginals_numba(counts_nb, args.q), args.repeats)
    print(f"numba  window_counts {t_nb * 1e3:9.2f} ms   edge_marginals {m_nb * 1e3:8.3f} ms")
    print(f"speedup window_counts x{t_np / t_nb:.1f}   edge_marginals x{m_np / m_nb:.1f}")

    same = np.array_equal(counts_np, counts_nb) and all(np.array_equal(a, b) for a, b in zip(marg_np, marg_nb))
    print("outputs identical" if same else "OUTPUT MISMATCH")
    return 0 if same else 1


if __name__ == "__main__":
    raise SystemExit(main())
