import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import naive_kmer_counts

from dbspectral.errors import DomainError, ResourceError
from dbspectral.kmers import (
    CircularString,
    CountTensor,
    count_kmers,
    cycle_residual,
    decompose,
    multi_k_pairing_residual,
    reconstruct,
)
from dbspectral.operators import apply_incidence
from dbspectral.spectral import cut_basis, cycle_basis, enumerate_fourier_words
from dbspectral.fourier import to_native
from dbspectral.words import FOURIER, NATIVE, Alphabet, Tensor, debruijn_tensor, tensor_from_terms

SAMPLE_STRING = "abbbababbbababbabababaaabaabaaabbbbbabaaabbabaababbbbbaaababa"
AB = Alphabet.default(2)


def parse(text, alphabet=AB):
    return CircularString.parse(text, alphabet)


def test_sample_string_counts():
    s = parse(SAMPLE_STRING)
    assert s.n == 61
    c = count_kmers(s, 3)
    assert c.counts.tolist() == [4, 7, 12, 6, 7, 11, 6, 8]
    assert int(c.counts.sum()) == 61


def test_small_examples():
    assert count_kmers(parse("aaaa"), 2).nonzero() == [(0, 4)]
    assert count_kmers(parse("ab"), 2).nonzero() == [(1, 1), (2, 1)]


def test_k_larger_than_n_wraps_repeatedly():
    c = count_kmers(parse("ab"), 5)
    # windows ababa and babab
    assert c.nonzero() == [(0b01010, 1), (0b10101, 1)]
    assert count_kmers(parse("b"), 3).nonzero() == [(7, 1)]


def test_errors():
    with pytest.raises(DomainError):
        count_kmers(parse("ab"), 0)
    with pytest.raises(DomainError):
        CircularString((), 2)
    with pytest.raises(DomainError):
        CircularString((0, 2), 2)
    with pytest.raises(DomainError):
        parse("abc")
    with pytest.raises(ResourceError):
        count_kmers(parse("ab"), 40)
    with pytest.raises(DomainError):
        CountTensor([1, 2, 3], 2, 1, 6)
    with pytest.raises(DomainError):
        CountTensor([1, -1], 2, 1, 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 4), st.integers(1, 6), st.lists(st.integers(0, 3), min_size=1, max_size=40))
def test_counts_match_naive(q, k, raw):
    letters = [c % q for c in raw]
    s = CircularString(letters, q)
    c = count_kmers(s, k)
    assert np.array_equal(c.counts, naive_kmer_counts(letters, k, q))
    assert int(c.counts.sum()) == len(letters)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=1, max_size=30), st.integers(0, 100), st.integers(1, 5))
def test_rotation_invariance(letters, shift, k):
    s = CircularString(letters, 4)
    assert np.array_equal(count_kmers(s, k).counts, count_kmers(s.rotate(shift), k).counts)


def test_cycle_residual_examples():
    c = count_kmers(parse(SAMPLE_STRING), 3)
    assert cycle_residual(c) == 0.0
    from dbspectral import _kernels

    suffix, prefix = _kernels.edge_marginals(c.counts, 2)
    assert suffix.tolist() == [11, 18, 18, 14] and prefix.tolist() == [11, 18, 18, 14]
    aab = CountTensor(np.eye(8, dtype=np.int64)[1], 2, 3, 1)
    assert cycle_residual(aab) == pytest.approx(1.0)
    assert cycle_residual(aab) == pytest.approx(apply_incidence(aab.tensor()).norm())
    assert cycle_residual(CountTensor(np.full(9, 5), 3, 2, 45)) == 0.0
    assert cycle_residual(count_kmers(parse("abba"), 1)) == 0.0
    assert cycle_residual(debruijn_tensor(3, 2)) < 1e-15


def test_random_strings_have_zero_residual():
    rng = np.random.default_rng(0)
    for q in (2, 4):
        for k in range(1, 7):
            for _ in range(50):
                s = CircularString(rng.integers(0, q, int(rng.integers(1, 60))), q)
                assert cycle_residual(count_kmers(s, k)) == 0.0


def test_decompose_sample_string():
    c = count_kmers(parse(SAMPLE_STRING), 3)
    coeffs, residual = decompose(c)
    assert coeffs[0][0] == cycle_basis(2, 3)[0].id
    assert coeffs[0][1] == pytest.approx(61 / math.sqrt(8))
    assert residual <= 1e-9
    back = reconstruct(coeffs, 2, 3)
    assert back.frame == NATIVE
    assert np.max(np.abs(back.coeffs - c.counts)) <= 1e-9


def test_decompose_debruijn_and_cut():
    coeffs, residual = decompose(debruijn_tensor(3, 3))
    nonzero = [(i, c) for i, c in coeffs if abs(c) > 1e-12]
    assert len(nonzero) == 1 and residual <= 1e-12
    for e in cut_basis(2, 4):
        coeffs, residual = decompose(e.vector)
        assert max(abs(c) for _, c in coeffs) <= 1e-9
        assert residual == pytest.approx(1)


def test_reconstruct_examples():
    assert reconstruct([], 2, 3).norm() == 0
    with pytest.raises(DomainError):
        reconstruct([("nope", 1.0)], 2, 3)
    with pytest.raises(DomainError):
        reconstruct([], 2, 3, frame="other")
    for e in cycle_basis(2, 3):
        coeffs, _ = decompose(e.vector)
        back = reconstruct(coeffs, 2, 3, frame=FOURIER)
        assert np.max(np.abs(back.coeffs - e.vector.coeffs)) <= 1e-12


def test_decompose_shape_check():
    with pytest.raises(DomainError):
        decompose(Tensor.zeros(2, 2), q=2, k=3)


def test_parseval_and_idempotence():
    rng = np.random.default_rng(1)
    for q, k in [(2, 4), (3, 3)]:
        t = Tensor(rng.standard_normal(q**k) + 1j * rng.standard_normal(q**k), q)
        coeffs, residual = decompose(t)
        energy = sum(abs(c) ** 2 for _, c in coeffs) + residual**2
        assert energy == pytest.approx(t.norm() ** 2, rel=1e-9)
        proj = reconstruct(coeffs, q, k)
        again, r2 = decompose(proj)
        assert r2 <= 1e-9
        assert np.allclose([c for _, c in again], [c for _, c in coeffs], atol=1e-9)


def test_hadamard_frame_decomposition():
    c = count_kmers(parse("abcdabccba", Alphabet.default(4)), 2)
    coeffs, residual = decompose(c, transform="hadamard")
    assert residual <= 1e-9
    back = reconstruct(coeffs, 4, 2, transform="hadamard")
    assert np.max(np.abs(back.coeffs - c.counts)) <= 1e-9


def test_multi_k_pairing():
    s = parse(SAMPLE_STRING)
    for k in range(1, 4):
        for ell in range(0, 3):
            for x in enumerate_fourier_words(2, k):
                assert multi_k_pairing_residual(s, k, ell, x) <= 1e-9
    s4 = CircularString(np.random.default_rng(2).integers(0, 4, 80), 4)
    for x in enumerate_fourier_words(4, 2)[:4]:
        assert multi_k_pairing_residual(s4, 2, 2, x) <= 1e-9


def test_count_tensor_native_tensor():
    c = count_kmers(parse("aab"), 2)
    t = c.tensor()
    assert t.frame == NATIVE
    assert t.allclose(tensor_from_terms([((0, 0), 1), ((0, 1), 1), ((1, 0), 1)], 2))
    assert to_native(t) is t
