import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dbspectral.errors import DomainError, ShapeError
from dbspectral.words import (
    FOURIER,
    NATIVE,
    Alphabet,
    Tensor,
    ToleranceConfig,
    all_words,
    debruijn_tensor,
    decode_index,
    encode_word,
    inner_product,
    random_tensor,
    tensor_from_terms,
)


def test_encode_examples():
    assert encode_word((0, 1), 2) == 1
    assert encode_word((1, 0, 0), 2) == 4
    assert encode_word((3, 2), 4) == 14
    assert encode_word((), 3) == 0


def test_decode_examples():
    assert decode_index(1, 2, 2) == (0, 1)
    assert decode_index(0, 3, 2) == (0, 0, 0)
    assert decode_index(14, 2, 4) == (3, 2)


def test_encode_decode_round_trip_exhaustive():
    for q in range(2, 6):
        for n in range(0, 7):
            if q**n > 20000:
                continue
            for i in range(q**n):
                assert encode_word(decode_index(i, n, q), q) == i


def test_encode_rejects_bad_letter():
    with pytest.raises(DomainError):
        encode_word((0, 2), 2)
    with pytest.raises(DomainError):
        decode_index(4, 2, 2)
    with pytest.raises(DomainError):
        decode_index(-1, 2, 2)


def test_alphabet():
    a = Alphabet.default(4)
    assert a.q == 4
    assert a.parse("dc") == (3, 2)
    assert a.format((3, 2)) == "dc"
    assert Alphabet(("x", "y", "z")).parse("zx") == (2, 0)
    with pytest.raises(DomainError):
        Alphabet(("a",))
    with pytest.raises(DomainError):
        Alphabet(("a", "a"))
    with pytest.raises(DomainError):
        a.parse("ae")


def test_inner_product_examples():
    q = 2
    aa = Tensor.basis((0, 0), q)
    assert inner_product(aa, aa) == 1
    u = debruijn_tensor(1, q)
    assert inner_product(u, u) == pytest.approx(1)
    a = Tensor.basis((0,), q)
    assert inner_product(u, a) == pytest.approx(1 / math.sqrt(2))


def test_inner_product_conjugates_first_argument():
    s = Tensor([1j, 0], 2)
    t = Tensor([1, 0], 2)
    assert inner_product(s, t) == pytest.approx(-1j)
    assert inner_product(t, s) == pytest.approx(1j)


def test_inner_product_mismatch():
    with pytest.raises(ShapeError):
        inner_product(Tensor.zeros(1, 2), Tensor.zeros(2, 2))
    with pytest.raises(ShapeError):
        inner_product(Tensor.zeros(1, 2), Tensor.zeros(1, 2, FOURIER))


def test_tensor_from_terms_examples():
    t = tensor_from_terms([((0, 0), 4), ((0, 1), 7)], 2)
    assert np.array_equal(t.coeffs, [4, 7, 0, 0])
    z = tensor_from_terms([], 2, order=1)
    assert z.order == 1 and z.norm() == 0
    u = tensor_from_terms([((0,), 1), ((1,), 1)], 2) / math.sqrt(2)
    assert u.allclose(debruijn_tensor(1, 2))
    acc = tensor_from_terms([((1,), 1), ((1,), 2)], 2)
    assert acc.coefficient((1,)) == 3


def test_tensor_from_terms_mixed_lengths():
    with pytest.raises(ShapeError):
        tensor_from_terms([((0,), 1), ((0, 0), 1)], 2)
    with pytest.raises(ShapeError):
        tensor_from_terms([], 2)


def test_tensor_shape_and_immutability():
    with pytest.raises(ShapeError):
        Tensor(np.zeros(3), 2)
    with pytest.raises(DomainError):
        Tensor(np.zeros(2), 1)
    t = Tensor.zeros(2, 3)
    assert t.order == 2 and t.coeffs.shape == (9,)
    assert Tensor([5.0], 2).order == 0
    with pytest.raises(ValueError):
        t.coeffs[0] = 1
    with pytest.raises(AttributeError):
        t.q = 4
    with pytest.raises(ShapeError):
        _ = Tensor.zeros(1, 2) + Tensor.zeros(1, 2, FOURIER)


def test_frame_tag_preserved_by_linear_ops():
    t = Tensor.basis((1, 0), 2, FOURIER)
    assert (t + t).frame == FOURIER
    assert (2 * t - t).frame == FOURIER
    assert (-t / 3).frame == FOURIER


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 4), st.integers(0, 4), st.integers(0, 2**31 - 1))
def test_parseval(q, n, seed):
    t = random_tensor(np.random.default_rng(seed), n, q)
    assert abs(np.sum(np.abs(t.coeffs) ** 2) - inner_product(t, t)) <= 1e-12 * max(1.0, t.norm() ** 2)
    assert inner_product(t, t).imag == 0


def test_debruijn_tensor_constant():
    for q in (2, 3, 5):
        for n in range(0, 4):
            t = debruijn_tensor(n, q)
            assert np.allclose(t.coeffs, q ** (-n / 2), atol=1e-15)
            assert t.norm() == pytest.approx(1)
    assert debruijn_tensor(2, 3, FOURIER).coefficient((0, 0)) == 1


def test_terms_and_all_words():
    t = tensor_from_terms([((1, 0), 2.5)], 2)
    assert list(t.terms()) == [((1, 0), 2.5)]
    assert all_words(2, 2) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert t.nnz() == 1
    assert "order=2" in repr(t)


def test_tolerance_config():
    cfg = ToleranceConfig()
    assert cfg.float_tol == 1e-9 and cfg.integer_tol == 0
    with pytest.raises(DomainError):
        ToleranceConfig(float_tol=-1)
    assert NATIVE != FOURIER
