"""Deletion operators, their adjoints and the de Bruijn graph operators.

All operators act matrix-free on flat coefficient vectors (any leading batch
axes are carried along).  They are abstract linear maps, so each one works in
either coordinate frame:

* native frame: a delete drops the boundary letter of a basis word with
  weight ``1/sqrt(q)``; an insert tensors the de Bruijn vector on.
* Fourier frame: a delete keeps a basis word only if its boundary letter is
  0 (the de Bruijn letter) and then drops it with weight 1; an insert
  prepends/appends letter 0 with weight 1.

The composite operators are

    adjacency          A   = ins_R del_L + ins_L del_R
    incidence          d   = del_L - del_R
    incidence adjoint  d*  = ins_L - ins_R
    vertex Laplacian   L_V = d d*  (= 2I - A)
    edge Laplacian     L_E = d* d  (= ins_L del_L + ins_R del_R - A)

A delete on an order-1 tensor returns the order-0 scalar ``sum(c)/sqrt(q)``
(native) so that adjointness with the insert holds on every order; a delete
on an order-0 tensor is rejected.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ResourceError
from .words import FOURIER, NATIVE, Tensor, Word, decode_index

DEFAULT_DENSE_LIMIT = 1 << 16

LEFT = "left"
RIGHT = "right"
PAPER = "paper"
COMBINATORIAL = "combinatorial"


class OperatorKind(str, enum.Enum):
    DELETE_LEFT = "delete-left"
    DELETE_RIGHT = "delete-right"
    INSERT_LEFT = "insert-left"
    INSERT_RIGHT = "insert-right"
    ADJACENCY = "adjacency"
    INCIDENCE = "incidence"
    INCIDENCE_ADJOINT = "incidence-adjoint"
    VERTEX_LAPLACIAN = "vertex-laplacian"
    EDGE_LAPLACIAN = "edge-laplacian"

    @property
    def offset(self) -> int:
        """Codomain order minus domain order."""
        return _OFFSETS[self]

    @property
    def min_order(self) -> int:
        return 0 if self.offset > 0 else 1

    @property
    def delete_count(self) -> int:
        # number of delete/insert factors in each term; fixes the
        # combinatorial rescaling q**(count/2)
        return 2 if self in _SQUARE_KINDS else 1


_OFFSETS = {
    OperatorKind.DELETE_LEFT: -1,
    OperatorKind.DELETE_RIGHT: -1,
    OperatorKind.INSERT_LEFT: 1,
    OperatorKind.INSERT_RIGHT: 1,
    OperatorKind.ADJACENCY: 0,
    OperatorKind.INCIDENCE: -1,
    OperatorKind.INCIDENCE_ADJOINT: 1,
    OperatorKind.VERTEX_LAPLACIAN: 0,
    OperatorKind.EDGE_LAPLACIAN: 0,
}
_SQUARE_KINDS = {OperatorKind.ADJACENCY, OperatorKind.VERTEX_LAPLACIAN, OperatorKind.EDGE_LAPLACIAN}


# -- array kernels -----------------------------------------------------------
# ``weight`` is the native-frame factor per delete/insert: 1/sqrt(q) for the
# operator normalization, 1 for the 0/±1 combinatorial matrices.


def _delete(arr, side, q, frame, weight):
    size = arr.shape[-1]
    if size == 1:
        raise DomainError("cannot delete a letter from an order-0 tensor")
    m = size // q
    lead = arr.shape[:-1]
    if side == LEFT:
        blocks = arr.reshape(lead + (q, m))
        if frame == FOURIER:
            return blocks[..., 0, :].copy()
        return blocks.sum(axis=-2) * weight
    if side == RIGHT:
        blocks = arr.reshape(lead + (m, q))
        if frame == FOURIER:
            return blocks[..., :, 0].copy()
        return blocks.sum(axis=-1) * weight
    raise DomainError(f"side must be 'left' or 'right', got {side!r}")


def _insert(arr, side, q, frame, weight):
    m = arr.shape[-1]
    lead = arr.shape[:-1]
    if side not in (LEFT, RIGHT):
        raise DomainError(f"side must be 'left' or 'right', got {side!r}")
    if frame == FOURIER:
        out = np.zeros(lead + (q * m,), dtype=np.complex128)
        if side == LEFT:
            out[..., :m] = arr
        else:
            out[..., ::q] = arr
        return out
    val = arr * weight
    if side == LEFT:
        return np.broadcast_to(val[..., None, :], lead + (q, m)).reshape(lead + (q * m,))
    return np.broadcast_to(val[..., :, None], lead + (m, q)).reshape(lead + (q * m,))


def apply_kind(kind: OperatorKind, arr, q: int, frame: str, weight: float | None = None):
    """Apply ``kind`` to the last axis of ``arr`` (flat coefficients)."""
    kind = OperatorKind(kind)
    if weight is None:
        weight = 1.0 / math.sqrt(q)
    if arr.shape[-1] == 1 and kind.min_order > 0:
        raise DomainError(f"{kind.value} is undefined on order-0 tensors")

    def dl(x):
        return _delete(x, LEFT, q, frame, weight)

    def dr(x):
        return _delete(x, RIGHT, q, frame, weight)

    def il(x):
        return _insert(x, LEFT, q, frame, weight)

    def ir(x):
        return _insert(x, RIGHT, q, frame, weight)

    if kind is OperatorKind.DELETE_LEFT:
        return dl(arr)
    if kind is OperatorKind.DELETE_RIGHT:
        return dr(arr)
    if kind is OperatorKind.INSERT_LEFT:
        return il(arr)
    if kind is OperatorKind.INSERT_RIGHT:
        return ir(arr)
    if kind is OperatorKind.ADJACENCY:
        return ir(dl(arr)) + il(dr(arr))
    if kind is OperatorKind.INCIDENCE:
        return dl(arr) - dr(arr)
    if kind is OperatorKind.INCIDENCE_ADJOINT:
        return il(arr) - ir(arr)
    if kind is OperatorKind.VERTEX_LAPLACIAN:
        up = il(arr) - ir(arr)
        return dl(up) - dr(up)
    if kind is OperatorKind.EDGE_LAPLACIAN:
        down = dl(arr) - dr(arr)
        return il(down) - ir(down)
    raise DomainError(f"unknown operator kind {kind!r}")  # pragma: no cover


def _apply(kind, t: Tensor) -> Tensor:
    return Tensor(apply_kind(kind, t.coeffs, t.q, t.frame), t.q, t.frame)


# -- public operator API -----------------------------------------------------


def apply_delete(side: str, t: Tensor) -> Tensor:
    """Left/right delete operator; order ``n >= 1`` to ``n - 1``."""
    kind = OperatorKind.DELETE_LEFT if side == LEFT else OperatorKind.DELETE_RIGHT
    if side not in (LEFT, RIGHT):
        raise DomainError(f"side must be 'left' or 'right', got {side!r}")
    return _apply(kind, t)


def apply_insert(side: str, t: Tensor) -> Tensor:
    """Adjoint of :func:`apply_delete`: tensor the de Bruijn vector on ``side``."""
    if side not in (LEFT, RIGHT):
        raise DomainError(f"side must be 'left' or 'right', got {side!r}")
    kind = OperatorKind.INSERT_LEFT if side == LEFT else OperatorKind.INSERT_RIGHT
    return _apply(kind, t)


def apply_adjacency(t: Tensor) -> Tensor:
    return _apply(OperatorKind.ADJACENCY, t)


def apply_incidence(t: Tensor) -> Tensor:
    return _apply(OperatorKind.INCIDENCE, t)


def apply_incidence_adjoint(t: Tensor) -> Tensor:
    return _apply(OperatorKind.INCIDENCE_ADJOINT, t)


def apply_vertex_laplacian(t: Tensor) -> Tensor:
    if t.order < 1:
        raise DomainError("the vertex Laplacian needs order >= 1")
    return _apply(OperatorKind.VERTEX_LAPLACIAN, t)


def apply_edge_laplacian(t: Tensor) -> Tensor:
    return _apply(OperatorKind.EDGE_LAPLACIAN, t)


def apply_operator(kind, t: Tensor) -> Tensor:
    return _apply(OperatorKind(kind), t)


# -- dense materialization ---------------------------------------------------


@dataclass(frozen=True)
class DenseMatrix:
    """Dense matrix of an operator on order-``order`` tensors.

    Rows index the codomain basis and columns the domain basis, so
    ``entries @ t.coeffs`` applies the operator.
    """

    kind: OperatorKind
    order: int
    q: int
    normalization: str
    frame: str
    entries: np.ndarray

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]


def check_dense_size(n: int, q: int, dense_limit: int = DEFAULT_DENSE_LIMIT):
    if q**n > dense_limit:
        raise ResourceError(f"q**n = {q}**{n} exceeds the dense limit {dense_limit}")


def materialize(
    kind,
    n: int,
    q: int,
    normalization: str = PAPER,
    frame: str = NATIVE,
    dense_limit: int = DEFAULT_DENSE_LIMIT,
) -> DenseMatrix:
    """Dense matrix of ``kind`` acting on order-``n`` tensors.

    ``normalization="paper"`` gives the 1/sqrt(q)-weighted operators;
    ``"combinatorial"`` (native frame only) gives the integer graph matrices:
    the 0/±1 incidence matrix E (vertices x edges, -1 at the source, +1 at
    the target, zero columns for self-loops), the edge-count adjacency, and
    the Laplacians E E^T and E^T E.  The two normalizations differ by
    ``q**(c/2)`` where ``c`` is 1 for single deletes/inserts and the incidence
    maps, and 2 for the adjacency and Laplacians.
    """
    kind = OperatorKind(kind)
    if n < kind.min_order:
        raise DomainError(f"{kind.value} is undefined on order {n}")
    check_dense_size(max(n, n + kind.offset), q, dense_limit)
    if normalization == PAPER:
        weight = 1.0 / math.sqrt(q)
    elif normalization == COMBINATORIAL:
        if frame != NATIVE:
            raise DomainError("combinatorial matrices are defined in the native frame only")
        weight = 1.0
    else:
        raise DomainError(f"unknown normalization {normalization!r}")
    eye = np.eye(q**n, dtype=np.complex128)
    columns = apply_kind(kind, eye, q, frame, weight)
    entries = np.ascontiguousarray(columns.T)
    entries.flags.writeable = False
    return DenseMatrix(kind, n, q, normalization, frame, entries)


def debruijn_edges(k: int, q: int, dense_limit: int = DEFAULT_DENSE_LIMIT):
    """Edges of the order-``k`` de Bruijn graph as ``(source, target, edge)`` words.

    Vertices are the ``(k-1)``-mers and each ``k``-mer ``s`` is the edge from
    ``s[:-1]`` to ``s[1:]``.
    """
    if k < 2:
        raise DomainError("de Bruijn graphs need k >= 2")
    check_dense_size(k, q, dense_limit)
    edges = []
    for i in range(q**k):
        w: Word = decode_index(i, k, q)
        edges.append((w[:-1], w[1:], w))
    return edges


def identity_residuals(t: Tensor) -> dict:
    """Max-norm errors of the delete/insert identities on ``t`` (order >= 1).

    Covers ``del ins = I`` on both sides, idempotence and self-adjointness
    of the projections ``ins del``, and the four commutation relations.
    Self-adjointness is tested through ``<P t, s> = <t, P s>`` with ``s``
    the reversed coefficient vector.
    """
    if t.order < 1:
        raise DomainError("identity checks need order >= 1")
    q, frame = t.q, t.frame
    c = t.coeffs

    def op(kind, x):
        return apply_kind(kind, x, q, frame)

    dl = lambda x: op(OperatorKind.DELETE_LEFT, x)  # noqa: E731
    dr = lambda x: op(OperatorKind.DELETE_RIGHT, x)  # noqa: E731
    il = lambda x: op(OperatorKind.INSERT_LEFT, x)  # noqa: E731
    ir = lambda x: op(OperatorKind.INSERT_RIGHT, x)  # noqa: E731

    def gap(a, b):
        return float(np.max(np.abs(a - b), initial=0.0))

    other = c[::-1].copy()
    out = {
        "left-inverse": gap(dl(il(c)), c),
        "right-inverse": gap(dr(ir(c)), c),
        "left-projection-idempotent": gap(il(dl(il(dl(c)))), il(dl(c))),
        "right-projection-idempotent": gap(ir(dr(ir(dr(c)))), ir(dr(c))),
        "left-projection-self-adjoint": abs(np.vdot(il(dl(c)), other) - np.vdot(c, il(dl(other)))),
        "right-projection-self-adjoint": abs(np.vdot(ir(dr(c)), other) - np.vdot(c, ir(dr(other)))),
        "inserts-commute": gap(il(ir(c)), ir(il(c))),
        "delete-left-insert-right": gap(dl(ir(c)), ir(dl(c))),
        "insert-left-delete-right": gap(il(dr(c)), dr(il(c))),
    }
    if t.order >= 2:
        out["deletes-commute"] = gap(dl(dr(c)), dr(dl(c)))
    return out
