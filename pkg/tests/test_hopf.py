import itertools
import math

import numpy as np
import pytest

from oracles import brute_deshuffle, brute_shuffle

from dbspectral.errors import DomainError
from dbspectral.hopf import (
    HOPF_PAIRS,
    FormalWordSum,
    PrimitiveAlphabet,
    WordTensorSum,
    antipode,
    antipode_axiom_residual,
    closure_check,
    coassociativity_residual,
    concat_words,
    coproduct_escape_witness,
    counit,
    deconcatenate,
    delete_sum,
    deshuffle,
    dual_pairing_residual,
    is_primitive,
    leibniz_residual,
    pairing,
    primitive_factorize,
    shuffle,
    tensor_pairing,
)
from dbspectral.words import FOURIER, NATIVE, Tensor

U, B, C = 0, 1, 2


def W(text):
    return tuple(text)


def S(*pairs):
    return FormalWordSum({W(w): c for w, c in pairs})


def words_upto(letters, n, start=0):
    for r in range(start, n + 1):
        yield from itertools.product(letters, repeat=r)


def test_shuffle_examples():
    got = shuffle(W("ab"), W("cd"))
    assert got == S(("abcd", 1), ("acbd", 1), ("cabd", 1), ("acdb", 1), ("cadb", 1), ("cdab", 1))
    assert shuffle(W("a"), W("a")) == S(("aa", 2))
    z = S(("ab", 2), ("c", -1))
    assert shuffle(FormalWordSum.unit(), z) == z
    assert shuffle(z, FormalWordSum.unit()) == z


def test_shuffle_matches_brute_force():
    for u in words_upto("ab", 3):
        for v in words_upto("ab", 3):
            got = shuffle(u, v)
            assert dict(got.items()) == brute_shuffle(u, v)
            assert sum(c.real for _, c in got.items()) == math.comb(len(u) + len(v), len(u))


def test_shuffle_commutative_associative():
    words = list(words_upto("ab", 2))
    for u in words:
        for v in words:
            assert shuffle(u, v) == shuffle(v, u)
            for x in words:
                assert shuffle(shuffle(u, v), x) == shuffle(u, shuffle(v, x))
                assert concat_words(concat_words(u, v), x) == concat_words(u, concat_words(v, x))


def test_concat_examples():
    assert concat_words(W("ab"), W("cd")) == S(("abcd", 1))
    z = S(("ab", 1j))
    assert concat_words(FormalWordSum.unit(), z) == z
    assert concat_words(S(("a", 1), ("b", 1)), W("c")) == S(("ac", 1), ("bc", 1))


def test_deconcatenate_examples():
    got = deconcatenate(W("abcd"))
    expected = {((), W("abcd")): 1, (W("a"), W("bcd")): 1, (W("ab"), W("cd")): 1, (W("abc"), W("d")): 1, (W("abcd"), ()): 1}
    assert got.terms == expected
    assert deconcatenate(FormalWordSum.unit()).terms == {((), ()): 1}
    alpha = PrimitiveAlphabet(3, ((B, U, U, C), (B, U, C)))
    w = (B, U, U, C, B, U, C)
    got = deconcatenate(w, alpha)
    assert got.terms == {((), w): 1, ((B, U, U, C), (B, U, C)): 1, (w, ()): 1}


def test_deshuffle_examples():
    got = deshuffle(W("abc"))
    expected = {
        ((), W("abc")): 1,
        (W("a"), W("bc")): 1,
        (W("b"), W("ac")): 1,
        (W("c"), W("ab")): 1,
        (W("ab"), W("c")): 1,
        (W("ac"), W("b")): 1,
        (W("bc"), W("a")): 1,
        (W("abc"), ()): 1,
    }
    assert got.terms == expected
    assert deshuffle(W("a")).terms == {((), W("a")): 1, (W("a"), ()): 1}
    assert deshuffle(W("aa")).terms == {((), W("aa")): 1, (W("a"), W("a")): 2, (W("aa"), ()): 1}
    for w in words_upto("ab", 4):
        assert deshuffle(w).terms == brute_deshuffle(w)
        assert deshuffle(w).total_multiplicity() == 2 ** len(w)


def test_antipode_and_counit():
    assert antipode(W("abc")) == S(("cba", -1))
    assert antipode(W("ab")) == S(("ba", 1))
    assert antipode(FormalWordSum.unit()) == FormalWordSum.unit()
    assert counit(FormalWordSum({(): 3, W("ab"): 2})) == 3
    assert counit(W("ab")) == 0
    assert counit(FormalWordSum.unit()) == 1


def test_antipode_axiom_examples():
    for pair in HOPF_PAIRS:
        assert antipode_axiom_residual(pair, W("ab")) == 0
        assert antipode_axiom_residual(pair, FormalWordSum.unit()) == 0
    with pytest.raises(DomainError):
        antipode_axiom_residual(("shuffle", "deshuffle"), W("ab"))


def test_antipode_axiom_over_primitive_letters():
    alpha = PrimitiveAlphabet(2, ((B,), (B, U, B)), ("x", "y"))
    for symbols in words_upto(alpha.symbols, 4):
        w = alpha.decode(symbols)
        assert alpha.encode(w) == symbols
        for pair in HOPF_PAIRS:
            assert antipode_axiom_residual(pair, w, alpha) == 0


def test_antipode_at_primitive_granularity():
    alpha = PrimitiveAlphabet(2, ((B,), (B, U, B)))
    w = (B, U, B, B)
    assert antipode(w, alpha) == FormalWordSum({(B, B, U, B): 1})
    assert antipode(w) == FormalWordSum({(B, B, U, B): 1})
    assert antipode((B, U, B), alpha) == FormalWordSum({(B, U, B): -1})


def test_coassociativity():
    for w in words_upto("ab", 4):
        assert coassociativity_residual("deconcat", w) == 0
        assert coassociativity_residual("deshuffle", w) == 0
    alpha = PrimitiveAlphabet(2, ((B,), (B, U, B)))
    assert coassociativity_residual("deshuffle", (B, U, B, B, B, U, B), alpha) == 0


def test_primitive_factorize_examples():
    assert primitive_factorize((B, B, U, B)) == [(B,), (B, U, B)]
    assert primitive_factorize((B, U, U, C, B, U, C)) == [(B, U, U, C), (B, U, C)]
    assert primitive_factorize((B, U, B)) == [(B, U, B)]
    assert is_primitive((B, U, B))
    assert not is_primitive((B, B))
    assert primitive_factorize(()) == []
    with pytest.raises(DomainError):
        primitive_factorize((U, B))
    with pytest.raises(DomainError):
        primitive_factorize((B, U))


def test_factorization_round_trip():
    for w in words_upto(range(3), 5, 1):
        if w[0] == 0 or w[-1] == 0:
            continue
        factors = primitive_factorize(w)
        assert sum(factors, ()) == w
        assert all(is_primitive(f) for f in factors)


def test_primitive_alphabet_validation():
    with pytest.raises(DomainError):
        PrimitiveAlphabet(2, ((B, B),))
    with pytest.raises(DomainError):
        PrimitiveAlphabet(2, ((B,), (B,)))
    with pytest.raises(DomainError):
        PrimitiveAlphabet(2, ((B,), (B, U, B)), ("x", "x"))
    with pytest.raises(DomainError):
        PrimitiveAlphabet(2, ((C,),))
    alpha = PrimitiveAlphabet.up_to(3, 3)
    assert (C, U, B) in alpha.words and (B, B) not in alpha.words
    with pytest.raises(DomainError):
        PrimitiveAlphabet(2, ((B,),)).split((B, U, B))
    with pytest.raises(DomainError):
        alpha.decode(("nope",))


def test_leibniz_examples():
    for side in ("left", "right"):
        assert leibniz_residual(side, W("ab"), W("cd")) == 0
        assert leibniz_residual(side, W("a"), W("b")) == 0
    got = delete_sum("right", shuffle(W("a"), W("b")), weight=1 / math.sqrt(2))
    assert got == S(("a", 1 / math.sqrt(2)), ("b", 1 / math.sqrt(2)))


def test_leibniz_exhaustive_small():
    for q in (2, 3):
        words = list(words_upto(range(q), 3, 1))
        for u in words:
            for v in words:
                for side in ("left", "right"):
                    assert leibniz_residual(side, u, v, q) == 0
                    assert leibniz_residual(side, u, v, q, FOURIER) == 0


def test_leibniz_random_sums():
    rng = np.random.default_rng(0)
    words = list(words_upto(range(3), 4, 1))
    for _ in range(20):
        z = FormalWordSum({words[i]: complex(*rng.standard_normal(2)) for i in rng.choice(len(words), 4)})
        z2 = FormalWordSum({words[i]: complex(*rng.standard_normal(2)) for i in rng.choice(len(words), 4)})
        assert leibniz_residual("left", z, z2, 3) <= 1e-12


def test_delete_sum_errors():
    with pytest.raises(DomainError):
        delete_sum("middle", W("ab"))
    with pytest.raises(DomainError):
        delete_sum("left", FormalWordSum.unit())


def test_closure_reports():
    rep = closure_check("X", "shuffle", 2, 4)
    assert rep.closed and rep.checked > 0
    assert closure_check("X", "concat", 3, 3).closed
    assert closure_check("W", "shuffle", 2, 4).closed
    rep = closure_check("W", "concat", 2, 4)
    assert not rep.closed
    assert ((0, 0, 0), (1, 1, 1, 1), (0, 0, 1, 1, 1, 1), (0, 0, 0, 1, 1, 1)) in rep.witnesses
    with pytest.raises(DomainError):
        closure_check("X", "shuffle", 2, 7)
    with pytest.raises(DomainError):
        closure_check("Y", "shuffle", 2, 2)
    with pytest.raises(DomainError):
        closure_check("X", "wedge", 2, 2)


def test_coproduct_escape_witness():
    left, right = coproduct_escape_witness((B, U, B))
    assert left + right == (B, U, B)
    assert U in (left[:1] + left[-1:] + right[:1] + right[-1:])
    assert coproduct_escape_witness((B, C)) is None


def test_dual_pairing_examples():
    assert dual_pairing_residual(W("a"), W("b"), W("ab")) == 0
    assert dual_pairing_residual(W("ab"), W("cd"), W("abcd")) == 0
    assert dual_pairing_residual(W("a"), W("a"), W("aa"), W("a")) == 0


def test_dual_pairing_exhaustive():
    words = list(words_upto("ab", 2))
    longs = list(words_upto("ab", 4))
    for u in words:
        for v in words:
            for w in longs:
                assert dual_pairing_residual(u, v, w) <= 1e-12


def test_crossed_pairing_fails():
    # shuffle against de-concatenation is not a duality: a, a, aa breaks it
    lhs = pairing(shuffle(W("a"), W("a")), W("aa"))
    rhs = tensor_pairing(W("a"), W("a"), deconcatenate(W("aa")))
    assert (lhs, rhs) == (2, 1)


def test_formal_sum_basics():
    z = FormalWordSum({W("ab"): 1, W("a"): 0, (): 2})
    assert len(z) == 2 and z.degrees() == [0, 2]
    assert z.grade(2) == S(("ab", 1))
    assert (z - z).norm() == 0
    t = Tensor.basis((1, 0), 2, FOURIER)
    back = FormalWordSum.from_tensor(t).to_tensor(2, 2, FOURIER)
    assert back.allclose(t) and back.frame == FOURIER
    native = FormalWordSum({(1, 1): 2}).to_tensor(2, 2, NATIVE)
    assert native.coefficient((1, 1)) == 2
    pair = WordTensorSum({(W("a"), W("b")): 1, (W("b"), W("a")): 0})
    assert len(pair) == 1 and pair.coefficient(W("a"), W("b")) == 1
