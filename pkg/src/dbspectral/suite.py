"""Invariant suite: runs every structural check at one (q, k_max) and reports."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import ResourceError
from .fourier import conjugation_residual
from .hopf import HOPF_PAIRS, PrimitiveAlphabet, antipode_axiom_residual, coassociativity_residual, leibniz_residual
from .kmers import CircularString, count_kmers, cycle_residual, decompose, reconstruct
from .operators import DEFAULT_DENSE_LIMIT, OperatorKind, apply_incidence, identity_residuals, materialize
from .spectral import (
    cut_basis,
    cycle_basis,
    cycle_dimension,
    closed_form_spectrum,
    dense_spectrum_oracle,
    edge_eigenpairs,
    eigen_residual,
    enumerate_fourier_words,
    full_basis,
    basis_matrix,
    cut_dimension,
    lift_pairing_residual,
    vertex_eigenpairs,
    xi_contraction_residual,
)
from .words import FOURIER, NATIVE, Tensor, random_tensor


@dataclass
class Check:
    name: str
    passed: bool
    residual: float
    tolerance: float
    seconds: float


@dataclass
class RunReport:
    q: int
    k_max: int
    seed: int
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def lines(self):
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            yield f"{status} {c.name} residual={c.residual:.3e} tol={c.tolerance:.0e} ({c.seconds:.2f}s)"

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "k_max": self.k_max,
            "seed": self.seed,
            "passed": self.passed,
            "checks": [c.__dict__ for c in self.checks],
        }


def _run(report, name, tol, fn):
    start = time.perf_counter()
    residual = float(fn())
    report.checks.append(Check(name, residual <= tol, residual, tol, time.perf_counter() - start))


def _identities(q, k_max, rng, samples):
    worst = 0.0
    for frame in (NATIVE, FOURIER):
        for n in range(1, k_max + 1):
            for _ in range(samples):
                worst = max(worst, max(identity_residuals(random_tensor(rng, n, q, frame)).values()))
    return worst


def _conjugation(q, k_max, dense_limit):
    kinds = [OperatorKind.ADJACENCY, OperatorKind.INCIDENCE, OperatorKind.INCIDENCE_ADJOINT,
             OperatorKind.VERTEX_LAPLACIAN, OperatorKind.EDGE_LAPLACIAN]
    return max(conjugation_residual(kind, n, q, dense_limit=dense_limit) for kind in kinds for n in range(1, k_max + 1))


def _eigen(q, k_max):
    worst = 0.0
    for k in range(1, k_max + 1):
        for i in range(1, k + 1):
            for x in enumerate_fourier_words(q, i):
                for pair in vertex_eigenpairs(x, k, q) + edge_eigenpairs(x, k, q):
                    worst = max(worst, eigen_residual(pair))
    return worst


def _spectrum(q, k_max, dense_limit):
    worst = 0.0
    for k in range(1, k_max + 1):
        for which in ("vertex", "edge"):
            closed = np.array(closed_form_spectrum(q, k, which))
            dense = np.array(dense_spectrum_oracle(q, k, which, dense_limit))
            if closed.shape != dense.shape:
                return np.inf
            worst = max(worst, float(np.max(np.abs(closed - dense))))
    return worst


def _dimensions(q, k_max):
    bad = 0
    for k in range(1, k_max + 1):
        bad += len(cycle_basis(q, k)) != cycle_dimension(q, k)
        bad += len(cut_basis(q, k)) != cut_dimension(q, k)
    return bad


def _orthogonality(q, k_max):
    worst = 0.0
    for k in range(1, k_max + 1):
        mat = basis_matrix(full_basis(q, k))
        gram = mat.conj().T @ mat
        worst = max(worst, float(np.max(np.abs(gram - np.eye(gram.shape[0])))))
    return worst


def _cycle_kernel(q, k_max):
    return max(apply_incidence(e.vector).norm() for k in range(1, k_max + 1) for e in cycle_basis(q, k))


def _rank(q, k_max, dense_limit):
    bad = 0
    for k in range(1, k_max + 1):
        d = materialize(OperatorKind.INCIDENCE, k, q, dense_limit=dense_limit).entries
        le = materialize(OperatorKind.EDGE_LAPLACIAN, k, q, dense_limit=dense_limit).entries
        rank = np.linalg.matrix_rank(d, tol=1e-9)
        nullity = le.shape[0] - np.linalg.matrix_rank(le, tol=1e-9)
        bad += rank != cut_dimension(q, k)
        bad += nullity != cycle_dimension(q, k)
    return bad


def _kmer_residuals(q, k_max, rng, samples):
    worst = 0.0
    for k in range(1, k_max + 1):
        for _ in range(samples):
            n = int(rng.integers(1, 40))
            s = CircularString(rng.integers(0, q, n), q)
            worst = max(worst, cycle_residual(count_kmers(s, k)))
    return worst


def _round_trip(q, k_max, rng):
    worst = 0.0
    for k in range(1, k_max + 1):
        s = CircularString(rng.integers(0, q, 50), q)
        t = count_kmers(s, k).tensor()
        coeffs, residual = decompose(t)
        back = reconstruct(coeffs, q, k)
        worst = max(worst, residual, float(np.max(np.abs(back.coeffs - t.coeffs))))
    return worst


def _hopf(q):
    letters = PrimitiveAlphabet(max(q, 2), ((1,), (1, 0, 1)))
    worst = 0.0
    for n in range(5):
        for factors in itertools.product(letters.words, repeat=n):
            w = sum(factors, ())
            for pair in HOPF_PAIRS:
                worst = max(worst, antipode_axiom_residual(pair, w, letters))
            worst = max(worst, coassociativity_residual("deconcat", w, letters))
            worst = max(worst, coassociativity_residual("deshuffle", w, letters))
    for n1, n2 in itertools.product(range(1, 3), repeat=2):
        for u in itertools.product(range(q), repeat=n1):
            for v in itertools.product(range(q), repeat=n2):
                for side in ("left", "right"):
                    worst = max(worst, leibniz_residual(side, u, v, q), leibniz_residual(side, u, v, q, FOURIER))
    return worst


def _recursion(q, k_max, rng):
    worst = 0.0
    for k in range(1, k_max + 1):
        basis = cycle_basis(q, k)
        coeffs = rng.standard_normal(len(basis)) + 1j * rng.standard_normal(len(basis))
        w = Tensor(basis_matrix(basis) @ coeffs, q, FOURIER)
        for x in enumerate_fourier_words(q, k)[:4]:
            for ell in range(0, 3):
                worst = max(worst, lift_pairing_residual(w, x, ell))
        for i in range(1, k + 1):
            x = enumerate_fourier_words(q, i)[0]
            for j in range(1, k - i + 1):
                worst = max(worst, xi_contraction_residual(x, j, q))
    return worst


def run_invariant_suite(
    q: int = 2,
    k_max: int = 4,
    seed: int = 0,
    dense_limit: int = DEFAULT_DENSE_LIMIT,
    samples: int = 5,
) -> RunReport:
    """Run the structural checks for orders ``1..k_max``; deterministic given ``seed``."""
    if q**k_max > dense_limit:
        raise ResourceError(f"q**k_max = {q}**{k_max} exceeds the dense limit {dense_limit}")
    rng = np.random.default_rng(seed)
    report = RunReport(q, k_max, seed)
    _run(report, "operator-identities", 1e-12, lambda: _identities(q, k_max, rng, samples))
    _run(report, "fourier-conjugation", 1e-10, lambda: _conjugation(q, k_max, dense_limit))
    _run(report, "eigen-residuals", 1e-9, lambda: _eigen(q, k_max))
    _run(report, "spectrum-vs-dense", 1e-9, lambda: _spectrum(q, k_max, dense_limit))
    _run(report, "basis-dimensions", 0, lambda: _dimensions(q, k_max))
    _run(report, "basis-orthonormality", 1e-9, lambda: _orthogonality(q, k_max))
    _run(report, "cycle-kernel", 1e-10, lambda: _cycle_kernel(q, k_max))
    _run(report, "incidence-rank", 0, lambda: _rank(q, k_max, dense_limit))
    _run(report, "kmer-cycle-residual", 0, lambda: _kmer_residuals(q, k_max, rng, 4 * samples))
    _run(report, "decompose-round-trip", 1e-9, lambda: _round_trip(q, k_max, rng))
    _run(report, "hopf-axioms", 1e-12, lambda: _hopf(q))
    _run(report, "recursion-and-pairing", 1e-9, lambda: _recursion(q, k_max, rng))
    return report
