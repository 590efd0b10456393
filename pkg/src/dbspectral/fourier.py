"""Per-factor unitary change of basis and the Fourier-frame operators.

The single-letter transform is a unitary ``q x q`` matrix ``M`` whose column
``m`` is the native-coordinate vector of Fourier letter ``m``; column 0 is
the de Bruijn vector.  A tensor's Fourier coordinates are its coefficients
in the product basis, ``(M^H x ... x M^H) c``.
"""

from __future__ import annotations

import enum
from functools import lru_cache

import numpy as np

from .errors import DomainError, ShapeError
from .operators import (
    DEFAULT_DENSE_LIMIT,
    LEFT,
    PAPER,
    RIGHT,
    OperatorKind,
    apply_kind,
    materialize,
)
from .words import FOURIER, NATIVE, Tensor, check_frame

FORWARD = "forward"
INVERSE = "inverse"


class TransformKind(str, enum.Enum):
    DFT = "dft"
    HADAMARD = "hadamard"


def _is_power_of_two(q: int) -> bool:
    return q >= 2 and q & (q - 1) == 0


@lru_cache(maxsize=None)
def _transform_matrix(kind: TransformKind, q: int) -> np.ndarray:
    if q < 2:
        raise DomainError("q must be at least 2")
    if kind is TransformKind.DFT:
        r = np.arange(q)
        # reduce the exponent mod q first so angles stay small; snap the
        # round-off at multiples of pi/2 to exact zeros
        angle = -2.0 * np.pi * (np.outer(r, r) % q) / q
        re, im = np.cos(angle), np.sin(angle)
        re[np.abs(re) < 1e-15] = 0.0
        im[np.abs(im) < 1e-15] = 0.0
        mat = re + 1j * im
    else:
        if not _is_power_of_two(q):
            raise DomainError(f"the Hadamard transform needs q = 2**m, got q={q}")
        h = np.array([[1.0, 1.0], [1.0, -1.0]])
        mat = h
        while mat.shape[0] < q:
            mat = np.kron(h, mat)
        mat = mat.astype(np.complex128)
    mat = mat / np.sqrt(q)
    mat.flags.writeable = False
    return mat


def unitary_transform_matrix(kind, q: int) -> np.ndarray:
    """Unitary ``q x q`` DFT or Sylvester-Hadamard matrix, scaled by ``1/sqrt(q)``.

    DFT column ``m`` is ``(w**(0*m), w**(1*m), ...)/sqrt(q)`` with
    ``w = exp(-2 pi i / q)``.
    """
    return _transform_matrix(TransformKind(kind), int(q))


def _per_factor(arr: np.ndarray, mat: np.ndarray, n: int, q: int) -> np.ndarray:
    out = arr.reshape((q,) * n)
    for axis in range(n):
        out = np.moveaxis(np.tensordot(mat, out, axes=([1], [axis])), 0, axis)
    return out.reshape(-1)


def transform_tensor(t: Tensor, direction: str = FORWARD, kind=TransformKind.DFT) -> Tensor:
    """Change coordinates native -> Fourier (forward) or back (inverse)."""
    mat = unitary_transform_matrix(kind, t.q)
    if direction == FORWARD:
        check_frame(t, NATIVE)
        return Tensor(_per_factor(t.coeffs, mat.conj().T, t.order, t.q), t.q, FOURIER)
    if direction == INVERSE:
        check_frame(t, FOURIER)
        return Tensor(_per_factor(t.coeffs, mat, t.order, t.q), t.q, NATIVE)
    raise DomainError(f"direction must be 'forward' or 'inverse', got {direction!r}")


def to_fourier(t: Tensor, kind=TransformKind.DFT) -> Tensor:
    return t if t.frame == FOURIER else transform_tensor(t, FORWARD, kind)


def to_native(t: Tensor, kind=TransformKind.DFT) -> Tensor:
    return t if t.frame == NATIVE else transform_tensor(t, INVERSE, kind)


def forward_matrix(n: int, q: int, kind=TransformKind.DFT) -> np.ndarray:
    """Dense ``q**n x q**n`` forward transform ``M^H x ... x M^H``."""
    mh = unitary_transform_matrix(kind, q).conj().T
    out = np.ones((1, 1), dtype=np.complex128)
    for _ in range(n):
        out = np.kron(out, mh)
    return out


def apply_fourier_delete(side: str, t: Tensor) -> Tensor:
    """Fourier-frame delete: keep words whose ``side`` letter is 0, drop it."""
    check_frame(t, FOURIER)
    if side not in (LEFT, RIGHT):
        raise DomainError(f"side must be 'left' or 'right', got {side!r}")
    kind = OperatorKind.DELETE_LEFT if side == LEFT else OperatorKind.DELETE_RIGHT
    return Tensor(apply_kind(kind, t.coeffs, t.q, FOURIER), t.q, FOURIER)


def apply_fourier_insert(side: str, t: Tensor) -> Tensor:
    """Fourier-frame insert: prepend/append letter 0 with weight 1."""
    check_frame(t, FOURIER)
    if side not in (LEFT, RIGHT):
        raise DomainError(f"side must be 'left' or 'right', got {side!r}")
    kind = OperatorKind.INSERT_LEFT if side == LEFT else OperatorKind.INSERT_RIGHT
    return Tensor(apply_kind(kind, t.coeffs, t.q, FOURIER), t.q, FOURIER)


def conjugation_residual(kind, n: int, q: int, transform=TransformKind.DFT, dense_limit: int = DEFAULT_DENSE_LIMIT) -> float:
    """Max-norm gap between ``F op F^-1`` (native op) and the Fourier-frame op.

    ``F`` is the forward transform on the relevant order; both sides are
    built as dense matrices.
    """
    kind = OperatorKind(kind)
    native = materialize(kind, n, q, PAPER, NATIVE, dense_limit).entries
    fourier = materialize(kind, n, q, PAPER, FOURIER, dense_limit).entries
    f_in = forward_matrix(n, q, transform)
    f_out = forward_matrix(n + kind.offset, q, transform)
    conjugated = f_out @ native @ f_in.conj().T
    if conjugated.shape != fourier.shape:  # pragma: no cover - guarded by construction
        raise ShapeError("shape mismatch in conjugation check")
    return float(np.max(np.abs(conjugated - fourier)))
