"""Brute-force reference implementations used only by the tests.

Everything here works word by word from the definitions, sharing no code
with the package beyond the index convention (leftmost letter most
significant).
"""

import cmath
import itertools
import math
from collections import Counter

import numpy as np


def words(n, q):
    return list(itertools.product(range(q), repeat=n))


def index(w, q):
    i = 0
    for c in w:
        i = i * q + c
    return i


# -- native-frame operators as word maps -------------------------------------


def _delete(w, side, q):
    # returns [(word, weight)]
    return [(w[1:] if side == "L" else w[:-1], 1 / math.sqrt(q))]


def _insert(w, side, q):
    s = 1 / math.sqrt(q)
    if side == "L":
        return [((a,) + w, s) for a in range(q)]
    return [(w + (a,), s) for a in range(q)]


def _compose(*maps):
    def run(w, q):
        terms = [(w, 1.0)]
        for m in reversed(maps):
            nxt = []
            for u, c in terms:
                for v, d in m(u, q):
                    nxt.append((v, c * d))
            terms = nxt
        return terms

    return run


def DL(w, q):
    return _delete(w, "L", q)


def DR(w, q):
    return _delete(w, "R", q)


def IL(w, q):
    return _insert(w, "L", q)


def IR(w, q):
    return _insert(w, "R", q)


def _neg(m):
    return lambda w, q: [(v, -c) for v, c in m(w, q)]


def _sum(*maps):
    return lambda w, q: [t for m in maps for t in m(w, q)]


ORACLE_MAPS = {
    "delete-left": (DL, -1),
    "delete-right": (DR, -1),
    "insert-left": (IL, 1),
    "insert-right": (IR, 1),
    "adjacency": (_sum(_compose(IR, DL), _compose(IL, DR)), 0),
    "incidence": (_sum(DL, _neg(DR)), -1),
    "incidence-adjoint": (_sum(IL, _neg(IR)), 1),
    # 2I - A written out independently of the d d* product
    "vertex-laplacian": (
        _sum(lambda w, q: [(w, 2.0)], _neg(_compose(IR, DL)), _neg(_compose(IL, DR))),
        0,
    ),
    # ins_L del_L + ins_R del_R - A
    "edge-laplacian": (
        _sum(_compose(IL, DL), _compose(IR, DR), _neg(_compose(IR, DL)), _neg(_compose(IL, DR))),
        0,
    ),
}


def dense_native(kind, n, q):
    """Dense native-frame matrix built from word maps."""
    fn, offset = ORACLE_MAPS[kind]
    m = n + offset
    out = np.zeros((q**m, q**n))
    for w in words(n, q):
        for v, c in fn(w, q):
            out[index(v, q), index(w, q)] += c
    return out


def combinatorial_incidence(k, q):
    """0/±1 vertex x edge matrix: -1 at the source (k-1)-mer, +1 at the target."""
    out = np.zeros((q ** (k - 1), q**k))
    for e in words(k, q):
        src, dst = e[:-1], e[1:]
        if src != dst:
            out[index(src, q), index(e, q)] -= 1
            out[index(dst, q), index(e, q)] += 1
    return out


def dft_matrix(q):
    """Unitary DFT with column m = letter m, entry (r, m) = exp(-2 pi i r m / q)/sqrt(q)."""
    return np.array([[cmath.exp(-2j * math.pi * r * m / q) / math.sqrt(q) for m in range(q)] for r in range(q)])


def kron_power(mat, n):
    out = np.ones((1, 1), dtype=complex)
    for _ in range(n):
        out = np.kron(out, mat)
    return out


# -- k-mers -------------------------------------------------------------------


def naive_kmer_counts(letters, k, q):
    n = len(letters)
    ext = list(letters) * (k // n + 2)
    counts = np.zeros(q**k, dtype=np.int64)
    for i in range(n):
        counts[index(ext[i : i + k], q)] += 1
    return counts


# -- words algebra ------------------------------------------------------------


def brute_shuffle(u, v):
    """Interleavings enumerated by choosing the positions of u's letters."""
    n = len(u) + len(v)
    out = Counter()
    for pos in itertools.combinations(range(n), len(u)):
        w, iu, iv = [], 0, 0
        for p in range(n):
            if p in pos:
                w.append(u[iu])
                iu += 1
            else:
                w.append(v[iv])
                iv += 1
        out[tuple(w)] += 1
    return out


def brute_deshuffle(w):
    out = Counter()
    n = len(w)
    for r in range(n + 1):
        for pos in itertools.combinations(range(n), r):
            left = tuple(w[p] for p in pos)
            right = tuple(w[p] for p in range(n) if p not in pos)
            out[(left, right)] += 1
    return out
