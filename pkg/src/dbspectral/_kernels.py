"""Hot loops for k-mer counting, with numba and pure-numpy implementations.

Both implementations are always importable as ``*_numpy`` / ``*_numba``
(the latter is ``None`` without numba); the unsuffixed names point at the
active backend chosen in :mod:`dbspectral._accel`.
"""

import numpy as np

from ._accel import USE_NUMBA, njit

_CHUNK = 1 << 16


def window_counts_numpy(letters, k, q):
    """Count the ``n`` cyclic windows of length ``k`` of ``letters``.

    Window ``i`` reads ``letters[(i + t) % n]`` for ``t = 0..k-1``, so windows
    wrap around (several times when ``k > n``).  Returns an int64 array of
    length ``q**k`` indexed big-endian.
    """
    letters = np.asarray(letters, dtype=np.int64)
    n = letters.shape[0]
    out = np.zeros(q**k, dtype=np.int64)
    weights = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    offsets = np.arange(k, dtype=np.int64)
    for start in range(0, n, _CHUNK):
        starts = np.arange(start, min(start + _CHUNK, n), dtype=np.int64)
        idx = letters[(starts[:, None] + offsets[None, :]) % n] @ weights
        out += np.bincount(idx, minlength=out.shape[0])
    return out


def _window_counts_loop(letters, k, q):
    n = letters.shape[0]
    out = np.zeros(q**k, dtype=np.int64)
    top = q ** (k - 1)
    idx = 0
    for t in range(k):
        idx = idx * q + letters[t % n]
    out[idx] += 1
    for i in range(1, n):
        idx = (idx % top) * q + letters[(i + k - 1) % n]
        out[idx] += 1
    return out


def edge_marginals_numpy(counts, q):
    """Integer in/out marginals of an edge-count vector of length ``q**k``.

    ``suffix[v]`` sums counts of words ``a v`` (left letter dropped) and
    ``prefix[v]`` sums counts of words ``v a`` (right letter dropped).
    """
    counts = np.asarray(counts, dtype=np.int64)
    m = counts.shape[0] // q
    suffix = counts.reshape(q, m).sum(axis=0)
    prefix = counts.reshape(m, q).sum(axis=1)
    return suffix, prefix


def _edge_marginals_loop(counts, q):
    m = counts.shape[0] // q
    suffix = np.zeros(m, dtype=np.int64)
    prefix = np.zeros(m, dtype=np.int64)
    for e in range(counts.shape[0]):
        c = counts[e]
        suffix[e % m] += c
        prefix[e // q] += c
    return suffix, prefix


_window_counts_jit = njit(_window_counts_loop)
_edge_marginals_jit = njit(_edge_marginals_loop)


def window_counts_numba(letters, k, q):
    if _window_counts_jit is None:
        raise RuntimeError("numba is not installed")
    return _window_counts_jit(np.ascontiguousarray(letters, dtype=np.int64), int(k), int(q))


def edge_marginals_numba(counts, q):
    if _edge_marginals_jit is None:
        raise RuntimeError("numba is not installed")
    return _edge_marginals_jit(np.ascontiguousarray(counts, dtype=np.int64), int(q))


if _window_counts_jit is None:
    window_counts_numba = None  # noqa: F811
    edge_marginals_numba = None  # noqa: F811

BACKEND = "numba" if USE_NUMBA else "numpy"

if USE_NUMBA:
    window_counts = window_counts_numba
    edge_marginals = edge_marginals_numba
else:
    window_counts = window_counts_numpy
    edge_marginals = edge_marginals_numpy
