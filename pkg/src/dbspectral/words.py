"""Alphabets, word encoding and the dense tensor type.

A tensor of order ``n`` over an alphabet of size ``q`` is stored as a flat
complex vector of length ``q**n``.  Basis words are indexed big-endian: the
leftmost letter is the most significant base-``q`` digit, so the index order
is lexicographic in the declared letter order (``aa, ab, ba, bb`` for
``q = 2``).

Every tensor carries a coordinate-frame tag.  ``"native"`` coordinates refer
to the letter basis; ``"fourier"`` coordinates refer to the per-factor unitary
Fourier (or Hadamard) basis whose letter 0 is the de Bruijn vector
``(1/sqrt(q)) * (1, ..., 1)``.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, ShapeError

NATIVE = "native"
FOURIER = "fourier"
FRAMES = (NATIVE, FOURIER)

Word = tuple  # tuple[int, ...] of letter indices


@dataclass(frozen=True)
class ToleranceConfig:
    """Comparison tolerances used by checks and exports."""

    float_tol: float = 1e-9
    integer_tol: float = 0.0

    def __post_init__(self):
        if self.float_tol < 0 or self.integer_tol < 0:
            raise DomainError("tolerances must be nonnegative")


@dataclass(frozen=True)
class Alphabet:
    """An ordered list of distinct letter symbols.

    Letter index 0 is the one identified with the de Bruijn vector once the
    Fourier transform is applied.
    """

    letters: tuple

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if len(letters) < 2:
            raise DomainError("an alphabet needs at least two letters (q >= 2)")
        if len(set(letters)) != len(letters):
            raise DomainError(f"duplicate letters in alphabet {letters!r}")
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(letters)})

    @property
    def q(self) -> int:
        return len(self.letters)

    @classmethod
    def default(cls, q: int) -> "Alphabet":
        """``ab``, ``abc``, ``abcd``... for ``q <= 26``."""
        if not 2 <= q <= 26:
            raise DomainError(f"no default alphabet for q={q}; pass explicit symbols")
        return cls(tuple(string.ascii_lowercase[:q]))

    def parse(self, text: Iterable[str]) -> Word:
        try:
            return tuple(self._index[c] for c in text)
        except KeyError as exc:
            raise DomainError(f"symbol {exc.args[0]!r} not in alphabet {''.join(map(str, self.letters))}") from None

    def format(self, word: Sequence[int]) -> str:
        return "".join(str(self.letters[i]) for i in word)


def _check_word(w: Sequence[int], q: int):
    for letter in w:
        if not 0 <= letter < q:
            raise DomainError(f"letter {letter} out of range for q={q}")


def encode_word(w: Sequence[int], q: int) -> int:
    """Big-endian base-``q`` index of ``w``."""
    _check_word(w, q)
    index = 0
    for letter in w:
        index = index * q + int(letter)
    return index


def decode_index(i: int, n: int, q: int) -> Word:
    """Inverse of :func:`encode_word` for words of length ``n``."""
    if not 0 <= i < q**n:
        raise DomainError(f"index {i} out of range for q={q}, n={n}")
    letters = []
    for _ in range(n):
        i, r = divmod(i, q)
        letters.append(r)
    return tuple(reversed(letters))


def _order_of(size: int, q: int) -> int:
    n = 0
    while size > 1:
        size, r = divmod(size, q)
        if r:
            return -1
        n += 1
    return n if size == 1 else -1


class Tensor:
    """An element of the order-``n`` tensor space over a ``q``-letter alphabet.

    Instances are immutable: the coefficient array is copied on construction
    and marked read-only.
    """

    __slots__ = ("coeffs", "q", "order", "frame")

    def __init__(self, coeffs, q: int, frame: str = NATIVE):
        if q < 2:
            raise DomainError("q must be at least 2")
        if frame not in FRAMES:
            raise DomainError(f"unknown frame {frame!r}")
        arr = np.array(coeffs, dtype=np.complex128).reshape(-1)
        order = _order_of(arr.shape[0], q)
        if order < 0:
            raise ShapeError(f"{arr.shape[0]} coefficients is not a power of q={q}")
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)
        object.__setattr__(self, "q", int(q))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "frame", frame)

    def __setattr__(self, name, value):
        raise AttributeError("Tensor is immutable")

    @classmethod
    def zeros(cls, n: int, q: int, frame: str = NATIVE) -> "Tensor":
        return cls(np.zeros(q**n), q, frame)

    @classmethod
    def basis(cls, word: Sequence[int], q: int, frame: str = NATIVE) -> "Tensor":
        arr = np.zeros(q ** len(word), dtype=np.complex128)
        arr[encode_word(word, q)] = 1.0
        return cls(arr, q, frame)

    def _like(self, arr) -> "Tensor":
        return Tensor(arr, self.q, self.frame)

    def _check_compatible(self, other: "Tensor"):
        if not isinstance(other, Tensor):
            raise ShapeError(f"expected Tensor, got {type(other).__name__}")
        if (self.q, self.order, self.frame) != (other.q, other.order, other.frame):
            raise ShapeError(
                f"incompatible tensors: (q={self.q}, n={self.order}, {self.frame}) vs "
                f"(q={other.q}, n={other.order}, {other.frame})"
            )

    def __add__(self, other):
        self._check_compatible(other)
        return self._like(self.coeffs + other.coeffs)

    def __sub__(self, other):
        self._check_compatible(other)
        return self._like(self.coeffs - other.coeffs)

    def __neg__(self):
        return self._like(-self.coeffs)

    def __mul__(self, scalar):
        if isinstance(scalar, Tensor):
            return NotImplemented
        return self._like(self.coeffs * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self._like(self.coeffs / scalar)

    def __repr__(self):
        return f"Tensor(q={self.q}, order={self.order}, frame={self.frame!r}, nnz={self.nnz()})"

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def nnz(self, tol: float = 0.0) -> int:
        return int(np.count_nonzero(np.abs(self.coeffs) > tol))

    def terms(self, tol: float = 0.0):
        """Yield ``(word, coefficient)`` for coefficients above ``tol``."""
        for i in np.flatnonzero(np.abs(self.coeffs) > tol):
            yield decode_index(int(i), self.order, self.q), complex(self.coeffs[i])

    def coefficient(self, word: Sequence[int]) -> complex:
        if len(word) != self.order:
            raise ShapeError(f"word of length {len(word)} in a tensor of order {self.order}")
        return complex(self.coeffs[encode_word(word, self.q)])

    def allclose(self, other: "Tensor", atol: float = 1e-12) -> bool:
        self._check_compatible(other)
        return bool(np.max(np.abs(self.coeffs - other.coeffs), initial=0.0) <= atol)


def inner_product(s: Tensor, t: Tensor) -> complex:
    """``<s, t>``, conjugate-linear in ``s`` and linear in ``t``."""
    s._check_compatible(t)
    return complex(np.vdot(s.coeffs, t.coeffs))


def tensor_from_terms(terms, q: int, frame: str = NATIVE, order: int | None = None) -> Tensor:
    """Build a tensor from ``(word, coefficient)`` pairs; repeated words add up.

    ``order`` is required when ``terms`` is empty.
    """
    terms = list(terms)
    lengths = {len(w) for w, _ in terms}
    if order is not None:
        lengths.add(order)
    if not lengths:
        raise ShapeError("order is required for an empty term list")
    if len(lengths) > 1:
        raise ShapeError(f"mixed word lengths {sorted(lengths)}")
    n = lengths.pop()
    arr = np.zeros(q**n, dtype=np.complex128)
    for w, c in terms:
        arr[encode_word(w, q)] += c
    return Tensor(arr, q, frame)


def debruijn_tensor(n: int, q: int, frame: str = NATIVE) -> Tensor:
    """The n-fold tensor power of the de Bruijn vector (unit norm)."""
    if frame == FOURIER:
        return Tensor.basis((0,) * n, q, FOURIER)
    return Tensor(np.full(q**n, q ** (-n / 2)), q, frame)


def random_tensor(rng: np.random.Generator, n: int, q: int, frame: str = NATIVE) -> Tensor:
    """Gaussian complex tensor; used by property checks."""
    size = q**n
    return Tensor(rng.standard_normal(size) + 1j * rng.standard_normal(size), q, frame)


def all_words(n: int, q: int):
    """All words of length ``n`` in index order."""
    return [decode_index(i, n, q) for i in range(q**n)]


def check_frame(t: Tensor, frame: str):
    if t.frame != frame:
        raise ShapeError(f"expected a {frame}-frame tensor, got {t.frame}")
