"""Spectral theory of de Bruijn graphs on tensor spaces.

Matrix-free graph operators on word tensors, closed-form Laplacian
eigenbases, orthogonal cycle/cut bases, k-mer count decomposition of
circular strings and the shuffle/concatenation word algebra.
"""

from .errors import DomainError, EigenvectorsUnavailable, PreconditionError, ResourceError, ShapeError
from .fourier import (
    TransformKind,
    apply_fourier_delete,
    apply_fourier_insert,
    conjugation_residual,
    to_fourier,
    to_native,
    transform_tensor,
    unitary_transform_matrix,
)
from .hopf import (
    FormalWordSum,
    PrimitiveAlphabet,
    WordTensorSum,
    antipode,
    antipode_axiom_residual,
    closure_check,
    concat_words,
    counit,
    deconcatenate,
    deshuffle,
    dual_pairing_residual,
    is_primitive,
    leibniz_residual,
    primitive_factorize,
    shuffle,
)
from .kmers import CircularString, CountTensor, count_kmers, cycle_residual, decompose, reconstruct
from .operators import (
    DenseMatrix,
    OperatorKind,
    apply_adjacency,
    apply_delete,
    apply_edge_laplacian,
    apply_incidence,
    apply_incidence_adjoint,
    apply_insert,
    apply_operator,
    apply_vertex_laplacian,
    debruijn_edges,
    materialize,
)
from .spectral import (
    BasisElement,
    EigenPair,
    count_fourier_words,
    cut_basis,
    cycle_basis,
    dense_spectrum_oracle,
    edge_eigenpairs,
    enumerate_fourier_words,
    lift_pairing_residual,
    toeplitz_eigenpairs,
    vertex_eigenpairs,
    xi_apply,
)
from .suite import RunReport, run_invariant_suite
from .words import (
    FOURIER,
    NATIVE,
    Alphabet,
    Tensor,
    ToleranceConfig,
    decode_index,
    encode_word,
    inner_product,
    tensor_from_terms,
)

__version__ = "0.1.0"
