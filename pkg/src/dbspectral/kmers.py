"""Circular-string k-mer counts and their expansion in the cycle basis.

Reading a circular string with period ``n`` gives exactly ``n`` windows of
length ``k`` (one per start position, wrapping around as often as needed).
The count tensor of those windows has equal in- and out-marginals on every
``(k-1)``-mer, which is the statement that it lies in the cycle space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .errors import DomainError, ResourceError
from .fourier import TransformKind, to_fourier, to_native
from .operators import apply_incidence
from .spectral import cycle_basis
from .words import FOURIER, NATIVE, Alphabet, Tensor

# counting only needs an int64 vector, so the limit is looser than for dense matrices
COUNT_LIMIT = 1 << 26


@dataclass(frozen=True)
class CircularString:
    """A nonempty letter sequence read with wraparound."""

    letters: tuple
    q: int

    def __post_init__(self):
        letters = tuple(int(c) for c in self.letters)
        object.__setattr__(self, "letters", letters)
        if not letters:
            raise DomainError("a circular string needs at least one letter")
        if self.q < 2:
            raise DomainError("q must be at least 2")
        bad = [c for c in letters if not 0 <= c < self.q]
        if bad:
            raise DomainError(f"letter index {bad[0]} out of range for q={self.q}")

    @classmethod
    def parse(cls, text: str, alphabet: Alphabet) -> "CircularString":
        return cls(alphabet.parse(text.strip()), alphabet.q)

    @property
    def n(self) -> int:
        return len(self.letters)

    def rotate(self, shift: int) -> "CircularString":
        shift %= self.n
        return CircularString(self.letters[shift:] + self.letters[:shift], self.q)


@dataclass(frozen=True)
class CountTensor:
    """Integer k-mer counts of a circular string, indexed like tensor coefficients."""

    counts: np.ndarray
    q: int
    k: int
    n: int

    def __post_init__(self):
        counts = np.array(self.counts, dtype=np.int64).reshape(-1)
        if counts.shape[0] != self.q**self.k:
            raise DomainError(f"expected {self.q ** self.k} counts, got {counts.shape[0]}")
        if np.any(counts < 0):
            raise DomainError("counts must be nonnegative")
        counts.flags.writeable = False
        object.__setattr__(self, "counts", counts)

    def tensor(self) -> Tensor:
        return Tensor(self.counts.astype(np.complex128), self.q, NATIVE)

    def nonzero(self):
        """``(index, count)`` for every k-mer that occurs."""
        idx = np.flatnonzero(self.counts)
        return [(int(i), int(self.counts[i])) for i in idx]


def count_kmers(s: CircularString, k: int, limit: int = COUNT_LIMIT) -> CountTensor:
    """k-mer count tensor of ``s``; always sums to ``s.n``."""
    if k < 1:
        raise DomainError(f"k must be at least 1, got {k}")
    if s.q**k > limit:
        raise ResourceError(f"q**k = {s.q}**{k} exceeds the count limit {limit}")
    letters = np.asarray(s.letters, dtype=np.int64)
    return CountTensor(_kernels.window_counts(letters, k, s.q), s.q, k, s.n)


def cycle_residual(t) -> float:
    """``|d t|`` for a count tensor (or any native tensor).

    For a :class:`CountTensor` the integer marginals are compared first, so a
    genuine count tensor yields exactly ``0.0`` with no rounding.
    """
    if isinstance(t, CountTensor):
        if t.k == 1:
            return 0.0
        suffix, prefix = _kernels.edge_marginals(t.counts, t.q)
        if np.array_equal(suffix, prefix):
            return 0.0
        # d t = (suffix - prefix) / sqrt(q) as an order k-1 tensor
        return float(np.linalg.norm((suffix - prefix).astype(float)) / math.sqrt(t.q))
    if t.order < 1:
        raise DomainError("cycle residual needs order >= 1")
    return apply_incidence(t).norm()


# -- decomposition -------------------------------------------------------------


@lru_cache(maxsize=16)
def _sparse_cycle_basis(q: int, k: int):
    """Cycle basis with each unit vector stored as (support, values)."""
    elements = cycle_basis(q, k)
    sparse = []
    for e in elements:
        idx = np.flatnonzero(e.vector.coeffs)
        sparse.append((idx, e.vector.coeffs[idx]))
    return tuple(elements), tuple(sparse)


def decompose(t, q: int | None = None, k: int | None = None, transform=TransformKind.DFT):
    """Expand ``t`` in the orthonormal cycle basis.

    Returns ``(coefficients, residual)`` where ``coefficients`` is a list of
    ``(basis id, complex)`` in basis order and ``residual`` is the norm of
    the component of ``t`` orthogonal to the cycle space.  Native tensors
    are moved to the Fourier frame first, using ``transform``.
    """
    if isinstance(t, CountTensor):
        t = t.tensor()
    q = t.q if q is None else q
    k = t.order if k is None else k
    if (t.q, t.order) != (q, k):
        raise DomainError(f"tensor has q={t.q}, order={t.order}; expected q={q}, k={k}")
    hat = to_fourier(t, transform).coeffs
    elements, sparse = _sparse_cycle_basis(q, k)
    coefficients = []
    projection = np.zeros_like(hat)
    for e, (idx, vals) in zip(elements, sparse):
        c = complex(np.vdot(vals, hat[idx]))
        coefficients.append((e.id, c))
        projection[idx] += c * vals
    residual = float(np.linalg.norm(hat - projection))
    return coefficients, residual


def reconstruct(coefficients, q: int, k: int, frame: str = NATIVE, transform=TransformKind.DFT) -> Tensor:
    """Inverse of :func:`decompose` on the cycle space."""
    if frame not in (NATIVE, FOURIER):
        raise DomainError(f"unknown frame {frame!r}")
    elements, sparse = _sparse_cycle_basis(q, k)
    lookup = {e.id: s for e, s in zip(elements, sparse)}
    out = np.zeros(q**k, dtype=np.complex128)
    for ident, c in coefficients:
        if ident not in lookup:
            raise DomainError(f"unknown basis element {ident!r} for q={q}, k={k}")
        idx, vals = lookup[ident]
        out[idx] += c * vals
    hat = Tensor(out, q, FOURIER)
    return hat if frame == FOURIER else to_native(hat, transform)


def multi_k_pairing_residual(s: CircularString, k: int, ell: int, x_word) -> float:
    """Pairing identity linking the order-``k`` and order-``k+ell`` count tensors of ``s``."""
    from .spectral import pairing_residual

    short = count_kmers(s, k).tensor()
    long = count_kmers(s, k + ell).tensor()
    return pairing_residual(long, short, x_word, ell)
