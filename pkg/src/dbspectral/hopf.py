"""The graded word algebra: shuffle and concatenation, their dual coproducts,
the antipode, and primitive words over the Fourier alphabet.

Words are tuples of hashable letters.  Over Fourier letters (integers with
0 the de Bruijn letter) the algebra of interest is spanned by words whose
boundary letters are nonzero.  That span is closed under both products but
the coproducts split such words into pieces with a 0 at the boundary unless
one works with *primitive* words as letters: a word is cut before every
nonzero letter whose predecessor is also nonzero.

The coproducts, antipode and shuffle accept an optional
:class:`PrimitiveAlphabet`; when given, they operate on primitive factors
instead of single letters.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DomainError
from .operators import LEFT, RIGHT, apply_incidence
from .spectral import cycle_basis
from .words import FOURIER, NATIVE, Tensor, tensor_from_terms

EMPTY = ()


# -- formal sums ---------------------------------------------------------------


class FormalWordSum:
    """Finitely supported linear combination of words of any length."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        acc = defaultdict(complex)
        items = terms.items() if isinstance(terms, dict) else (terms or [])
        for word, c in items:
            acc[tuple(word)] += c
        self._terms = {w: c for w, c in acc.items() if c != 0}

    @classmethod
    def word(cls, w, coefficient=1) -> "FormalWordSum":
        return cls({tuple(w): coefficient})

    @classmethod
    def unit(cls) -> "FormalWordSum":
        return cls({EMPTY: 1})

    @classmethod
    def from_tensor(cls, t: Tensor, tol: float = 0.0) -> "FormalWordSum":
        return cls(dict(t.terms(tol)))

    def to_tensor(self, q: int, order: int, frame: str = NATIVE) -> Tensor:
        bad = [w for w in self._terms if len(w) != order]
        if bad:
            raise DomainError(f"word {bad[0]} does not have length {order}")
        return tensor_from_terms(self._terms.items(), q, frame, order)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, w) -> complex:
        return self._terms.get(tuple(w), 0)

    def grade(self, n: int) -> "FormalWordSum":
        return FormalWordSum({w: c for w, c in self._terms.items() if len(w) == n})

    def degrees(self) -> list:
        return sorted({len(w) for w in self._terms})

    def norm(self) -> float:
        return math.sqrt(sum(abs(c) ** 2 for c in self._terms.values()))

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(sorted(self._terms.items(), key=lambda kv: (len(kv[0]), repr(kv[0]))))

    def __add__(self, other):
        out = defaultdict(complex, self._terms)
        for w, c in other.items():
            out[w] += c
        return FormalWordSum(out)

    def __neg__(self):
        return FormalWordSum({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, FormalWordSum):
            return NotImplemented
        return FormalWordSum({w: c * scalar for w, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FormalWordSum):
            return NotImplemented
        return self._terms == other._terms

    def __repr__(self):
        body = " + ".join(f"{_fmt_coeff(c)}{_fmt_word(w)}" for w, c in self) or "0"
        return f"FormalWordSum({body})"


class WordTensorSum:
    """Linear combination of tensor products ``w1 (x) w2 (x) ...`` of words."""

    __slots__ = ("_terms", "arity")

    def __init__(self, terms=None, arity: int = 2):
        acc = defaultdict(complex)
        items = terms.items() if isinstance(terms, dict) else (terms or [])
        for key, c in items:
            key = tuple(tuple(w) for w in key)
            if len(key) != arity:
                raise DomainError(f"expected {arity} tensor factors, got {len(key)}")
            acc[key] += c
        self._terms = {k: c for k, c in acc.items() if c != 0}
        self.arity = arity

    def items(self):
        return self._terms.items()

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def coefficient(self, *words) -> complex:
        return self._terms.get(tuple(tuple(w) for w in words), 0)

    def total_multiplicity(self):
        return sum(self._terms.values())

    def norm(self) -> float:
        return math.sqrt(sum(abs(c) ** 2 for c in self._terms.values()))

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(sorted(self._terms.items(), key=lambda kv: (tuple(map(len, kv[0])), repr(kv[0]))))

    def __add__(self, other):
        out = defaultdict(complex, self._terms)
        for k, c in other.items():
            out[k] += c
        return WordTensorSum(out, self.arity)

    def __sub__(self, other):
        return self + WordTensorSum({k: -c for k, c in other.items()}, other.arity)

    def __eq__(self, other):
        if not isinstance(other, WordTensorSum):
            return NotImplemented
        return self.arity == other.arity and self._terms == other._terms

    def __repr__(self):
        body = " + ".join(f"{_fmt_coeff(c)}" + "(x)".join(_fmt_word(w) for w in k) for k, c in self) or "0"
        return f"WordTensorSum({body})"


def _fmt_coeff(c) -> str:
    c = complex(c)
    if c == 1:
        return ""
    if c.imag == 0:
        r = c.real
        return f"{int(r)}*" if r == int(r) else f"{r:g}*"
    return f"({c:g})*"


def _fmt_word(w) -> str:
    if not w:
        return "1"
    if all(isinstance(c, str) and len(c) == 1 for c in w):
        return "".join(w)
    return "[" + ",".join(map(str, w)) + "]"


def _as_sum(z) -> FormalWordSum:
    if isinstance(z, FormalWordSum):
        return z
    return FormalWordSum.word(z)


# -- primitive words -----------------------------------------------------------


def _check_tx_word(w):
    if w and (w[0] == 0 or w[-1] == 0):
        raise DomainError(f"{w} has a 0 boundary letter, so it is not a basis word of T(X)")


def primitive_factorize(w) -> list:
    """Split a T(X) basis word before each nonzero letter that follows a nonzero letter."""
    w = tuple(w)
    _check_tx_word(w)
    factors, start = [], 0
    for i in range(1, len(w)):
        if w[i] != 0 and w[i - 1] != 0:
            factors.append(w[start:i])
            start = i
    if w:
        factors.append(w[start:])
    return factors


def is_primitive(w) -> bool:
    w = tuple(w)
    if not w or w[0] == 0 or w[-1] == 0:
        return False
    return len(primitive_factorize(w)) == 1


@dataclass(frozen=True)
class PrimitiveAlphabet:
    """Primitive Fourier words used as the letters of a new alphabet."""

    q: int
    words: tuple
    symbols: tuple = field(default=())

    def __post_init__(self):
        words = tuple(tuple(w) for w in self.words)
        object.__setattr__(self, "words", words)
        for w in words:
            if any(not 0 <= c < self.q for c in w):
                raise DomainError(f"{w} has letters outside [0, {self.q})")
            if not is_primitive(w):
                raise DomainError(f"{w} is not primitive")
        if len(set(words)) != len(words):
            raise DomainError("duplicate primitive words")
        symbols = tuple(self.symbols) or tuple(f"p{i}" for i in range(len(words)))
        if len(symbols) != len(words) or len(set(symbols)) != len(symbols):
            raise DomainError("need one unique symbol per primitive word")
        object.__setattr__(self, "symbols", symbols)

    @classmethod
    def up_to(cls, q: int, max_len: int) -> "PrimitiveAlphabet":
        """All primitive words of length <= ``max_len``."""
        words = []
        for n in range(1, max_len + 1):
            for w in itertools.product(range(q), repeat=n):
                if is_primitive(w):
                    words.append(w)
        return cls(q, tuple(words))

    def split(self, w) -> list:
        factors = primitive_factorize(w)
        known = set(self.words)
        for f in factors:
            if f not in known:
                raise DomainError(f"primitive factor {f} is not in the alphabet")
        return factors

    def encode(self, w) -> tuple:
        table = dict(zip(self.words, self.symbols))
        return tuple(table[f] for f in self.split(w))

    def decode(self, symbols) -> tuple:
        table = dict(zip(self.symbols, self.words))
        try:
            return tuple(c for s in symbols for c in table[s])
        except KeyError as exc:
            raise DomainError(f"unknown primitive symbol {exc.args[0]!r}") from None


def _units(w, alphabet):
    """The letters of ``w`` at the active granularity, each as a tuple."""
    if alphabet is None:
        return [(c,) for c in w]
    return alphabet.split(w)


def _join(units) -> tuple:
    return tuple(c for u in units for c in u)


# -- products ------------------------------------------------------------------


@lru_cache(maxsize=1 << 14)
def _shuffle_units(u: tuple, v: tuple) -> tuple:
    """All interleavings of unit sequences, as ((word, multiplicity), ...)."""
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc = defaultdict(int)
    for rest, m in _shuffle_units(u[1:], v):
        acc[(u[0],) + rest] += m
    for rest, m in _shuffle_units(u, v[1:]):
        acc[(v[0],) + rest] += m
    return tuple(acc.items())


def shuffle_words(u, v, alphabet=None) -> FormalWordSum:
    uu, vv = tuple(_units(tuple(u), alphabet)), tuple(_units(tuple(v), alphabet))
    return FormalWordSum({_join(w): m for w, m in _shuffle_units(uu, vv)})


def shuffle(z, z2, alphabet=None) -> FormalWordSum:
    """Bilinear shuffle product; ``1`` (the empty word) is the unit."""
    z, z2 = _as_sum(z), _as_sum(z2)
    acc = defaultdict(complex)
    for u, a in z.items():
        uu = tuple(_units(u, alphabet))
        for v, b in z2.items():
            vv = tuple(_units(v, alphabet))
            for w, m in _shuffle_units(uu, vv):
                acc[_join(w)] += a * b * m
    return FormalWordSum(acc)


def concat_words(z, z2) -> FormalWordSum:
    """Bilinear concatenation product."""
    z, z2 = _as_sum(z), _as_sum(z2)
    acc = defaultdict(complex)
    for u, a in z.items():
        for v, b in z2.items():
            acc[u + v] += a * b
    return FormalWordSum(acc)


# -- coproducts, counit, antipode ----------------------------------------------


def deconcatenate(z, alphabet=None) -> WordTensorSum:
    """``w -> sum_i w[:i] (x) w[i:]`` over unit boundaries."""
    acc = defaultdict(complex)
    for w, c in _as_sum(z).items():
        units = _units(w, alphabet)
        for i in range(len(units) + 1):
            acc[(_join(units[:i]), _join(units[i:]))] += c
    return WordTensorSum(acc)


def deshuffle(z, alphabet=None) -> WordTensorSum:
    """``w -> sum over subsets I of w_I (x) w_(complement of I)``."""
    acc = defaultdict(complex)
    for w, c in _as_sum(z).items():
        units = _units(w, alphabet)
        n = len(units)
        for mask in range(1 << n):
            left = [units[i] for i in range(n) if mask >> (n - 1 - i) & 1]
            right = [units[i] for i in range(n) if not mask >> (n - 1 - i) & 1]
            acc[(_join(left), _join(right))] += c
    return WordTensorSum(acc)


def counit(z) -> complex:
    return _as_sum(z).coefficient(EMPTY)


def antipode(z, alphabet=None) -> FormalWordSum:
    """``w1...wk -> (-1)**k wk...w1`` over units."""
    acc = defaultdict(complex)
    for w, c in _as_sum(z).items():
        units = _units(w, alphabet)
        acc[_join(units[::-1])] += c * (-1) ** len(units)
    return FormalWordSum(acc)


PRODUCTS = {"shuffle": shuffle, "concat": lambda a, b, alphabet=None: concat_words(a, b)}
COPRODUCTS = {"deconcat": deconcatenate, "deshuffle": deshuffle}
HOPF_PAIRS = (("shuffle", "deconcat"), ("concat", "deshuffle"))


def _multiply(product, delta: WordTensorSum, left_map, right_map, alphabet) -> FormalWordSum:
    total = FormalWordSum()
    mult = PRODUCTS[product]
    for (u, v), c in delta.items():
        total = total + mult(left_map(u), right_map(v), alphabet=alphabet) * c
    return total


def antipode_axiom_residual(pair, z, alphabet=None) -> float:
    """Largest of ``|m (id (x) S) D z - e(z) 1|`` and ``|m (S (x) id) D z - e(z) 1|``."""
    product, coproduct = pair
    if (product, coproduct) not in HOPF_PAIRS:
        raise DomainError(f"unknown Hopf pair {pair!r}; expected one of {HOPF_PAIRS}")
    z = _as_sum(z)
    delta = COPRODUCTS[coproduct](z, alphabet=alphabet)
    target = FormalWordSum.unit() * counit(z)

    def ident(w):
        return FormalWordSum.word(w)

    def anti(w):
        return antipode(FormalWordSum.word(w), alphabet)

    right = _multiply(product, delta, ident, anti, alphabet) - target
    left = _multiply(product, delta, anti, ident, alphabet) - target
    return max(right.norm(), left.norm())


def coassociativity_residual(coproduct: str, z, alphabet=None) -> float:
    """``|(id (x) D) D z - (D (x) id) D z|``."""
    delta = COPRODUCTS[coproduct]
    first = delta(z, alphabet=alphabet)
    acc_r = defaultdict(complex)
    acc_l = defaultdict(complex)
    for (u, v), c in first.items():
        for (v1, v2), d in delta(FormalWordSum.word(v), alphabet=alphabet).items():
            acc_r[(u, v1, v2)] += c * d
        for (u1, u2), d in delta(FormalWordSum.word(u), alphabet=alphabet).items():
            acc_l[(u1, u2, v)] += c * d
    diff = WordTensorSum(acc_r, 3) - WordTensorSum(acc_l, 3)
    return diff.norm()


# -- derivation property ---------------------------------------------------------


def delete_sum(side: str, z, frame: str = NATIVE, weight: float = 1.0) -> FormalWordSum:
    """Graded delete on a formal sum.

    Native frame: drop the boundary letter with ``weight``.  Fourier frame:
    keep only words whose boundary letter is 0, then drop it.
    """
    if side not in (LEFT, RIGHT):
        raise DomainError(f"side must be 'left' or 'right', got {side!r}")
    acc = defaultdict(complex)
    for w, c in _as_sum(z).items():
        if not w:
            raise DomainError("cannot delete a letter from the empty word")
        letter, rest = (w[0], w[1:]) if side == LEFT else (w[-1], w[:-1])
        if frame == FOURIER:
            if letter == 0:
                acc[rest] += c
        else:
            acc[rest] += c * weight
    return FormalWordSum(acc)


def leibniz_residual(side: str, z, z2, q: int = 2, frame: str = NATIVE) -> float:
    """``|del(z ⧢ z2) - del(z) ⧢ z2 - z ⧢ del(z2)|``.

    The native delete carries ``1/sqrt(q)``; the identity is homogeneous in
    that factor, so it is evaluated with unit weight (exact for integer
    coefficients) and scaled afterwards.
    """
    z, z2 = _as_sum(z), _as_sum(z2)
    lhs = delete_sum(side, shuffle(z, z2), frame)
    rhs = shuffle(delete_sum(side, z, frame), z2) + shuffle(z, delete_sum(side, z2, frame))
    scale = 1.0 if frame == FOURIER else 1.0 / math.sqrt(q)
    return (lhs - rhs).norm() * scale


# -- closure of subspaces --------------------------------------------------------


@dataclass
class ClosureReport:
    space: str
    product: str
    q: int
    max_len: int
    closed: bool
    checked: int
    max_residual: float
    witnesses: list = field(default_factory=list)


def _in_tx(w) -> bool:
    return not w or (w[0] != 0 and w[-1] != 0)


def _x_words(q, n):
    from .spectral import enumerate_fourier_words

    return enumerate_fourier_words(q, n)


def closure_check(space: str, product: str, q: int = 2, max_len: int = 4, tol: float = 1e-12) -> ClosureReport:
    """Test whether ``space`` (``X`` or ``W``) is closed under ``product``.

    ``max_len`` bounds the length of each factor.  ``X`` is the span of
    words with nonzero boundary letters; ``W`` is the cycle space (kernel of
    the incidence operator).  For ``(W, concat)`` the witnesses are pairs of
    constant words ``a^k, b^l`` whose concatenation leaves the cycle space.
    """
    if max_len < 1 or max_len > 6:
        raise DomainError("max_len must be between 1 and 6")
    if product not in PRODUCTS:
        raise DomainError(f"unknown product {product!r}")
    mult = PRODUCTS[product]
    report = ClosureReport(space, product, q, max_len, True, 0, 0.0)
    if space == "X":
        for n1 in range(max_len + 1):
            for n2 in range(max_len + 1):
                for u in _x_words(q, n1):
                    for v in _x_words(q, n2):
                        report.checked += 1
                        escaped = [w for w, _ in mult(u, v).items() if not _in_tx(w)]
                        if escaped:
                            report.closed = False
                            report.witnesses.append((u, v, escaped[0]))
        return report
    if space != "W":
        raise DomainError(f"space must be 'X' or 'W', got {space!r}")
    if product == "shuffle":
        bases = {n: [FormalWordSum.from_tensor(e.vector) for e in cycle_basis(q, n)] for n in range(1, max_len + 1)}
        for n1 in range(1, max_len + 1):
            for n2 in range(1, max_len + 1):
                for a in bases[n1]:
                    for b in bases[n2]:
                        report.checked += 1
                        t = shuffle(a, b).to_tensor(q, n1 + n2, FOURIER)
                        r = apply_incidence(t).norm()
                        report.max_residual = max(report.max_residual, r)
                        if r > tol:
                            report.closed = False
                            report.witnesses.append((a, b, r))
        return report
    # concat: constant words a^n1 and b^n2 each lie in the cycle space
    for n1 in range(1, max_len + 1):
        for n2 in range(1, max_len + 1):
            for a in range(q):
                for b in range(q):
                    report.checked += 1
                    w = (a,) * n1 + (b,) * n2
                    left = delete_sum(LEFT, FormalWordSum.word(w))
                    right = delete_sum(RIGHT, FormalWordSum.word(w))
                    r = (left - right).norm() / math.sqrt(q)
                    report.max_residual = max(report.max_residual, r)
                    if r > tol:
                        report.closed = False
                        report.witnesses.append(((a,) * n1, (b,) * n2, w[1:], w[:-1]))
    return report


def coproduct_escape_witness(w, coproduct: str = "deconcat"):
    """First term of the letter-level coproduct of ``w`` with a factor outside T(X).

    Returns ``(left, right)`` or ``None`` when every factor stays inside.
    """
    for (u, v), _c in COPRODUCTS[coproduct](FormalWordSum.word(w)):
        if not (_in_tx(u) and _in_tx(v)):
            return u, v
    return None


# -- duality ---------------------------------------------------------------------


def pairing(z, w) -> complex:
    """Word-basis pairing, conjugate-linear in the first argument."""
    z, w = _as_sum(z), _as_sum(w)
    return sum((np.conj(c) * w.coefficient(u) for u, c in z.items()), 0j)


def tensor_pairing(z1, z2, delta: WordTensorSum) -> complex:
    z1, z2 = _as_sum(z1), _as_sum(z2)
    total = 0j
    for (u, v), c in delta.items():
        total += np.conj(z1.coefficient(u)) * np.conj(z2.coefficient(v)) * c
    return total


def _duality_gap(z, z2, w) -> float:
    gap_shuffle = abs(pairing(shuffle(z, z2), w) - tensor_pairing(z, z2, deshuffle(w)))
    gap_concat = abs(pairing(concat_words(z, z2), w) - tensor_pairing(z, z2, deconcatenate(w)))
    return float(gap_shuffle + gap_concat)


def dual_pairing_residual(z, z2, w, w2=None) -> float:
    """Duality of the two Hopf structures under the word-basis pairing.

    Shuffle is paired with de-shuffle and concatenation with
    de-concatenation.  With ``w2`` given, the mirrored identities with
    ``(w, w2)`` as the factors and ``z`` as the long element are added.
    """
    gap = _duality_gap(z, z2, w)
    if w2 is not None:
        gap += _duality_gap(w, w2, z)
    return gap
