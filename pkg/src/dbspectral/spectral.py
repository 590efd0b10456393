"""Closed-form Laplacian eigenpairs and orthogonal cycle/cut bases.

Everything here lives in the Fourier frame.  A Fourier word is a word whose
first and last letters are nonzero (letter 0 is the de Bruijn vector); the
empty word is the single Fourier word of length 0.  Padding a Fourier word
``x`` of length ``i`` with ``j`` copies of letter 0, split between the two
ends, spans a ``(j + 1)``-dimensional block on which the vertex Laplacian is
the tridiagonal Toeplitz matrix ``tridiag(-1, 2, -1)``.

The padding operator with cosine weights

    Xi(j, h) v = (j + 1)**-0.5 * sum_{l=0..j} cos((2l + 1) h pi / (2(j + 1)))
                 * ins_L**(j - l) ins_R**l v

gives the cycle space of order ``k`` as the span of ``Xi(j, 0) x`` over all
Fourier words of length ``k - j``, and the cut space as the span of
``Xi(j, h) x`` with ``1 <= h <= j``.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, EigenvectorsUnavailable, PreconditionError
from .fourier import to_fourier
from .operators import (
    DEFAULT_DENSE_LIMIT,
    LEFT,
    PAPER,
    RIGHT,
    OperatorKind,
    apply_delete,
    apply_incidence,
    apply_insert,
    apply_kind,
    apply_vertex_laplacian,
    check_dense_size,
    materialize,
)
from .words import FOURIER, NATIVE, Tensor, Word, encode_word, inner_product

CYCLE = "cycle"
CUT = "cut"
VERTEX = "vertex"
EDGE = "edge"


# -- Fourier words -------------------------------------------------------------


def is_fourier_word(word, q: int | None = None) -> bool:
    word = tuple(word)
    if q is not None and any(not 0 <= c < q for c in word):
        return False
    return len(word) == 0 or (word[0] != 0 and word[-1] != 0)


def _require_fourier_word(word, q):
    if not is_fourier_word(word, q):
        raise DomainError(f"{tuple(word)} is not a Fourier word (boundary letters must be nonzero)")


def enumerate_fourier_words(q: int, r: int) -> list:
    """Fourier words of length ``r`` in lexicographic order."""
    if r < 0:
        raise DomainError("r must be nonnegative")
    if r == 0:
        return [()]
    edge = range(1, q)
    if r == 1:
        return [(a,) for a in edge]
    factors = [edge] + [range(q)] * (r - 2) + [edge]
    return list(itertools.product(*factors))


def count_fourier_words(q: int, r: int) -> int:
    if r < 0:
        raise DomainError("r must be nonnegative")
    if r == 0:
        return 1
    if r == 1:
        return q - 1
    return q ** (r - 2) * (q - 1) ** 2


def cycle_dimension(q: int, k: int) -> int:
    return q**k - q ** (k - 1) + 1


def cut_dimension(q: int, k: int) -> int:
    return q ** (k - 1) - 1


# -- padding operators ---------------------------------------------------------


def _cos(x: float) -> float:
    # exact zeros at odd multiples of pi/2 keep supports and eigenvalues clean
    c = math.cos(x)
    return 0.0 if abs(c) < 1e-15 else c


def _sin(x: float) -> float:
    s = math.sin(x)
    return 0.0 if abs(s) < 1e-15 else s



def _padded_family(x: Tensor, total: int):
    """``[ins_L**(total - l) ins_R**l x for l in 0..total]``."""
    right = [x]
    for _ in range(total):
        right.append(apply_insert(RIGHT, right[-1]))
    family = []
    for ell, r in enumerate(right):
        v = r
        for _ in range(total - ell):
            v = apply_insert(LEFT, v)
        family.append(v)
    return family


def xi_apply(x: Tensor, j: int, h: int) -> Tensor:
    """Cosine-weighted padding of ``x`` with ``j`` de Bruijn letters (order n -> n + j)."""
    if j < 0 or h < 0:
        raise DomainError("j and h must be nonnegative")
    if h > j:
        raise DomainError(f"h={h} exceeds j={j}")
    family = _padded_family(x, j)
    out = np.zeros_like(family[0].coeffs)
    for ell, v in enumerate(family):
        out += _cos((2 * ell + 1) * h * math.pi / (2 * (j + 1))) * v.coeffs
    return Tensor(out / math.sqrt(j + 1), x.q, x.frame)


def _word_tensor(word, q) -> Tensor:
    return Tensor.basis(tuple(word), q, FOURIER)


# -- eigenpairs ----------------------------------------------------------------


@dataclass(frozen=True)
class EigenPair:
    """Closed-form eigenpair of the Fourier-frame vertex or edge Laplacian.

    ``j = k - i`` where ``i`` is the length of ``x_word``; the eigenvalue is
    ``2 - 2 cos(h pi / (j + 2))``.  Vectors are left unnormalized.
    """

    vector: Tensor
    eigenvalue: float
    x_word: Word
    i: int
    j: int
    h: int
    kind: str


def laplacian_eigenvalue(j: int, h: int) -> float:
    return 2.0 - 2.0 * _cos(h * math.pi / (j + 2))


def _check_eigen_args(x_word, k, q):
    i = len(x_word)
    if i < 1 or i > k:
        raise DomainError(f"need 1 <= len(x) <= k, got len(x)={i}, k={k}")
    _require_fourier_word(x_word, q)
    return i, k - i


def vertex_eigenpairs(x_word, k: int, q: int) -> list[EigenPair]:
    """The ``j + 1`` eigenpairs of the vertex Laplacian on order ``k`` grown from ``x_word``."""
    x_word = tuple(x_word)
    i, j = _check_eigen_args(x_word, k, q)
    # family[l] = ins_L**(j - l) ins_R**l x, i.e. sum index l + 1 of the sine form
    family = _padded_family(_word_tensor(x_word, q), j)
    pairs = []
    for h in range(1, j + 2):
        coeffs = sum(_sin((ell + 1) * h * math.pi / (j + 2)) * v.coeffs for ell, v in enumerate(family))
        vec = Tensor(coeffs, q, FOURIER)
        pairs.append(EigenPair(vec, laplacian_eigenvalue(j, h), x_word, i, j, h, VERTEX))
    return pairs


def edge_eigenpairs(x_word, k: int, q: int) -> list[EigenPair]:
    """The ``j + 2`` eigenpairs of the edge Laplacian on order ``k + 1`` grown from ``x_word``."""
    x_word = tuple(x_word)
    i, j = _check_eigen_args(x_word, k, q)
    family = _padded_family(_word_tensor(x_word, q), j + 1)
    pairs = []
    for h in range(0, j + 2):
        coeffs = sum(_cos((2 * ell + 1) * h * math.pi / (2 * (j + 2))) * v.coeffs for ell, v in enumerate(family))
        vec = Tensor(coeffs, q, FOURIER)
        pairs.append(EigenPair(vec, laplacian_eigenvalue(j, h), x_word, i, j, h, EDGE))
    return pairs


# -- cycle and cut bases -------------------------------------------------------


@dataclass(frozen=True)
class BasisElement:
    """A unit-norm cycle- or cut-space basis vector ``Xi(j, h) x / scale``.

    Here ``j`` counts padding letters, so ``i + j = k`` and the edge-Laplacian
    eigenvalue is ``2 - 2 cos(h pi / (j + 1))``.  ``scale`` is the norm of
    the unnormalized ``Xi(j, h) x``.
    """

    vector: Tensor
    eigenvalue: float
    x_word: Word
    i: int
    j: int
    h: int
    kind: str
    scale: float

    normalized = True

    @property
    def id(self) -> str:
        return basis_id(self.kind, self.x_word, self.j, self.h)

    @property
    def raw_vector(self) -> Tensor:
        return self.vector * self.scale


def basis_id(kind: str, x_word, j: int, h: int) -> str:
    word = ".".join(str(c) for c in x_word) or "e"
    return f"{kind}:x={word}:j={j}:h={h}"


def _element(x_word, k, q, h) -> BasisElement:
    j = k - len(x_word)
    raw = xi_apply(_word_tensor(x_word, q), j, h)
    scale = raw.norm()
    eigenvalue = 0.0 if h == 0 else 2.0 - 2.0 * _cos(h * math.pi / (j + 1))
    return BasisElement(raw / scale, eigenvalue, tuple(x_word), len(x_word), j, h, CYCLE if h == 0 else CUT, scale)


def _check_k(q, k, minimum):
    if q < 2:
        raise DomainError("q must be at least 2")
    if k < minimum:
        raise DomainError(f"k must be at least {minimum}")


def cycle_basis(q: int, k: int) -> list[BasisElement]:
    """Orthonormal basis of the order-``k`` cycle space, ``q**k - q**(k-1) + 1`` vectors."""
    _check_k(q, k, 1)
    return [_element(x, k, q, 0) for i in range(k + 1) for x in enumerate_fourier_words(q, i)]


def cut_basis(q: int, k: int) -> list[BasisElement]:
    """Orthonormal basis of the order-``k`` cut space, ``q**(k-1) - 1`` vectors."""
    _check_k(q, k, 1)
    out = []
    for i in range(1, k):
        for x in enumerate_fourier_words(q, i):
            out.extend(_element(x, k, q, h) for h in range(1, k - i + 1))
    return out


def full_basis(q: int, k: int) -> list[BasisElement]:
    """Cycle and cut elements merged in ``(i, x, h)`` order."""
    elements = cycle_basis(q, k) + cut_basis(q, k)
    return sorted(elements, key=lambda e: (e.i, e.x_word, e.h))


def basis_matrix(elements) -> np.ndarray:
    """Stack unit basis vectors as columns."""
    return np.column_stack([e.vector.coeffs for e in elements])


# -- oracles -------------------------------------------------------------------


def toeplitz_eigenpairs(delta: float, sigma: float, tau: float, n: int):
    """Eigenpairs of the ``n x n`` tridiagonal Toeplitz matrix.

    The matrix has ``delta`` on the diagonal, ``tau`` above and ``sigma``
    below.  Returns ``[(lambda_h, x_h) for h in 1..n]`` with
    ``lambda_h = delta + 2 sqrt(sigma tau) cos(h pi / (n + 1))`` and
    ``x_h[m - 1] = (sigma / tau)**(m / 2) sin(h m pi / (n + 1))``.  The
    square root of ``sigma tau`` is the principal one and ``(sigma/tau)**(1/2)``
    is taken as ``sqrt(sigma tau) / tau`` so the two branches match.  Raises :class:`EigenvectorsUnavailable` (carrying
    the eigenvalues) when ``sigma * tau == 0``.
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    product = sigma * tau
    root = cmath.sqrt(product) if product < 0 else math.sqrt(product)
    eigenvalues = [delta + 2 * root * _cos(h * math.pi / (n + 1)) for h in range(1, n + 1)]
    if product == 0:
        if n == 1:
            return [(eigenvalues[0], np.ones(1))]
        raise EigenvectorsUnavailable("eigenvectors need sigma * tau != 0", eigenvalues)
    # (sigma/tau)**(1/2) taken as sqrt(sigma tau)/tau, the branch that agrees
    # with the principal sqrt(sigma tau) used in the eigenvalues
    ratio_root = root / tau
    m = np.arange(1, n + 1)
    growth = np.power(ratio_root, m) if product > 0 else np.power(complex(ratio_root), m)
    return [(lam, growth * np.sin(h * m * math.pi / (n + 1))) for h, lam in zip(range(1, n + 1), eigenvalues)]


def tridiagonal_toeplitz(delta, sigma, tau, n) -> np.ndarray:
    mat = np.diag(np.full(n, delta, dtype=float))
    if n > 1:
        mat += np.diag(np.full(n - 1, tau, dtype=float), 1) + np.diag(np.full(n - 1, sigma, dtype=float), -1)
    return mat


def dense_spectrum_oracle(q: int, k: int, which: str = VERTEX, dense_limit: int = DEFAULT_DENSE_LIMIT) -> list[float]:
    """Sorted eigenvalues of the dense native-frame Laplacian on order ``k``."""
    kind = {VERTEX: OperatorKind.VERTEX_LAPLACIAN, EDGE: OperatorKind.EDGE_LAPLACIAN}.get(which)
    if kind is None:
        raise DomainError(f"which must be 'vertex' or 'edge', got {which!r}")
    mat = materialize(kind, k, q, PAPER, NATIVE, dense_limit).entries
    return sorted(np.linalg.eigvalsh(mat).tolist())


def closed_form_spectrum(q: int, k: int, which: str = VERTEX) -> list[float]:
    """Eigenvalue multiset predicted by the closed-form eigenbasis, sorted."""
    _check_k(q, k, 1)
    values = []
    if which == VERTEX:
        values.append(0.0)
        for i in range(1, k + 1):
            j = k - i
            values += [laplacian_eigenvalue(j, h) for h in range(1, j + 2)] * count_fourier_words(q, i)
    elif which == EDGE:
        values += [0.0] * cycle_dimension(q, k)
        for i in range(1, k):
            j = k - i
            values += [2.0 - 2.0 * _cos(h * math.pi / (j + 1)) for h in range(1, j + 1)] * count_fourier_words(q, i)
    else:
        raise DomainError(f"which must be 'vertex' or 'edge', got {which!r}")
    return sorted(values)


def block_compression(x_word, k: int, q: int) -> np.ndarray:
    """Vertex Laplacian compressed onto the padded family of ``x_word`` in order ``k``.

    Row/column ``l`` is ``ins_L**(j - l) ins_R**l x``; the result should be
    ``tridiag(-1, 2, -1)`` of size ``j + 1``.
    """
    x_word = tuple(x_word)
    _i, j = _check_eigen_args(x_word, k, q)
    family = _padded_family(_word_tensor(x_word, q), j)
    images = [apply_vertex_laplacian(v) for v in family]
    return np.array([[inner_product(a, b) for b in images] for a in family])


# -- recursion and pairing identities ------------------------------------------


def _check_cycle(w: Tensor, tol: float):
    if w.order < 1:
        raise PreconditionError("cycle-space elements need order >= 1")
    residual = apply_incidence(w).norm()
    if residual > tol * max(1.0, w.norm()):
        raise PreconditionError(f"input is not in the cycle space (|d w| = {residual:.3e})")


def lift(w: Tensor, ell: int) -> Tensor:
    """``q**(-ell/2) * sum_{i=0..ell} ins_L**i ins_R**(ell - i) w``."""
    total = Tensor.zeros(w.order + ell, w.q, w.frame)
    for v in _padded_family(w, ell):
        total = total + v
    return total * (w.q ** (-ell / 2))


def pairing_residual(w_long: Tensor, w_short: Tensor, x_word, ell: int) -> float:
    """``|<w_long, Xi(ell, 0) x> - sqrt(ell + 1) q**(-ell/2) <w_short, x>|`` (Fourier frame)."""
    q = w_short.q
    x_word = tuple(x_word)
    if len(x_word) != w_short.order or len(x_word) < 1:
        raise DomainError("x must be a nonempty Fourier word of the same order as w_short")
    _require_fourier_word(x_word, q)
    w_long = to_fourier(w_long)
    w_short = to_fourier(w_short)
    x = _word_tensor(x_word, q)
    lhs = inner_product(w_long, xi_apply(x, ell, 0))
    if ell == 0:
        rhs = inner_product(w_short, x)
    else:
        rhs = math.sqrt(ell + 1) * q ** (-ell / 2) * inner_product(w_short, x)
    return abs(lhs - rhs)


def lift_pairing_residual(w: Tensor, x_word, ell: int, tol: float = 1e-10) -> float:
    """Pairing identity between a cycle-space ``w`` and its ``ell``-step lift."""
    if ell < 0:
        raise DomainError("ell must be nonnegative")
    w = to_fourier(w)
    _check_cycle(w, tol)
    return pairing_residual(lift(w, ell), w, x_word, ell)


def xi_contraction_residual(x_word, j: int, q: int) -> float:
    """Max error of ``sqrt((j+1)/j) del_{L,R} Xi(j,0) x = Xi(j-1,0) x`` and its iterates."""
    x_word = tuple(x_word)
    if len(x_word) < 1 or j < 1:
        raise DomainError("need a nonempty Fourier word and j >= 1")
    _require_fourier_word(x_word, q)
    x = _word_tensor(x_word, q)
    top = xi_apply(x, j, 0)
    worst = 0.0
    for side in (LEFT, RIGHT):
        step = apply_delete(side, top) * math.sqrt((j + 1) / j)
        worst = max(worst, (step - xi_apply(x, j - 1, 0)).norm())
        # iterated form: sqrt(j+1) del**i Xi(j,0) x = sqrt(j-i+1) Xi(j-i,0) x
        v = top
        for i in range(1, j + 1):
            v = apply_delete(side, v)
            gap = v * math.sqrt(j + 1) - xi_apply(x, j - i, 0) * math.sqrt(j - i + 1)
            worst = max(worst, gap.norm())
    return worst


def kernel_stability_residual(w: Tensor, depth: int, tol: float = 1e-10) -> float:
    """For cycle-space ``w``: ``del_L**a del_R**b w`` stays in the cycle space
    and depends only on ``a + b``; returns the worst violation for ``a + b <= depth``."""
    _check_cycle(w, tol)
    worst = 0.0
    for total in range(1, min(depth, w.order) + 1):
        reference = None
        for a in range(total + 1):
            v = w
            for _ in range(a):
                v = apply_delete(LEFT, v)
            for _ in range(total - a):
                v = apply_delete(RIGHT, v)
            if v.order >= 1:
                worst = max(worst, apply_incidence(v).norm())
            if reference is None:
                reference = v
            else:
                worst = max(worst, (v - reference).norm())
    return worst


def fourier_index(word, q: int) -> int:
    return encode_word(word, q)


def eigen_residual(pair: EigenPair) -> float:
    kind = OperatorKind.VERTEX_LAPLACIAN if pair.kind == VERTEX else OperatorKind.EDGE_LAPLACIAN
    image = apply_kind(kind, pair.vector.coeffs, pair.vector.q, pair.vector.frame)
    return float(np.linalg.norm(image - pair.eigenvalue * pair.vector.coeffs))


def check_basis_size(q: int, k: int, dense_limit: int = DEFAULT_DENSE_LIMIT):
    check_dense_size(k, q, dense_limit)
