from __future__ import annotations

import itertools
import pickle

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from crclab.errors import CharMismatch, DegreeTooLarge, DivisionByZero, NoEmbedding, NotPrime
from crclab.gf import (
    digit_add,
    digit_neg,
    embed,
    field_arith,
    field_create,
    field_embed,
    gf,
    mu_basis,
    mu_contract,
    mu_expand,
    mu_matrix,
    mu_matrix_contract,
    prime_power,
)

from oracles import RefField, is_irreducible

FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (2, 6)]


def least_irreducible(p, k):
    # candidates ordered by the encoding sum(c_i p^i)
    cands = sorted(itertools.product(range(p), repeat=k),
                   key=lambda c: sum(x * p ** i for i, x in enumerate(c)))
    for low in cands:
        mod = list(low) + [1]
        if is_irreducible(mod, p):
            return mod
    raise AssertionError


@pytest.mark.parametrize("p,k", FIELDS)
def test_modulus_is_least_irreducible(p, k):
    F = field_create(p, k)
    assert list(F.modulus) == least_irreducible(p, k)


def test_small_field_moduli():
    assert list(field_create(2, 2).modulus) == [1, 1, 1]
    assert list(field_create(3, 2).modulus) == [1, 0, 1]
    assert field_create(2, 1).order == 2


@pytest.mark.parametrize("p,k", FIELDS)
def test_tables_match_polynomial_oracle(p, k):
    F = field_create(p, k)
    R = RefField(p, list(F.modulus))
    a, b = np.meshgrid(F.elements(), F.elements(), indexing="ij")
    a, b = a.ravel(), b.ravel()
    mul = F.mul(a, b)
    add = F.add(a, b)
    for x, y, m, s in zip(a, b, mul, add):
        assert m == R.mul(int(x), int(y))
        assert s == R.add(int(x), int(y))
    for x in range(1, F.order):
        assert F.inv(x) == R.inv(x)
        assert F.neg(x) == R.neg(x)


@pytest.mark.parametrize("p,k", FIELDS)
def test_generator_is_primitive(p, k):
    F = field_create(p, k)
    powers = {int(F.pow(F.generator, e)) for e in range(F.order - 1)}
    assert powers == set(range(1, F.order))


def test_f4_examples():
    F4 = gf(4)
    assert field_arith(F4, "mul", 2, 2) == 3
    assert field_arith(F4, "inv", 2) == 3
    assert field_arith(F4, "add", 2, 3) == 1
    assert field_arith(F4, "neg", 3) == 3
    for a in range(4):
        assert field_arith(F4, "add", a, 0) == a


def test_inverse_of_zero():
    with pytest.raises(DivisionByZero):
        gf(9).inv(0)
    with pytest.raises(DivisionByZero):
        field_arith(gf(2), "inv", 0)


def test_creation_errors():
    with pytest.raises(NotPrime):
        field_create(4, 1)
    with pytest.raises(DegreeTooLarge):
        field_create(2, 40)
    with pytest.raises(ValueError):
        prime_power(12)
    assert prime_power(64) == (2, 6)


def test_fields_are_cached_and_picklable():
    assert field_create(2, 3) is gf(8)
    assert pickle.loads(pickle.dumps(gf(8))) is gf(8)


field_and_elems = st.sampled_from(FIELDS).flatmap(
    lambda pk: st.tuples(st.just(field_create(*pk)),
                         *[st.integers(0, pk[0] ** pk[1] - 1)] * 3))


@given(field_and_elems)
def test_field_axioms(args):
    F, a, b, c = args
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(a, b) == F.add(a, F.neg(b))
    if a:
        assert F.mul(a, F.inv(a)) == 1


@given(st.integers(0, 2 ** 12 - 1), st.integers(0, 2 ** 12 - 1))
def test_digit_add_is_xor_in_characteristic_two(x, y):
    assert digit_add(x, y, 2, 12) == x ^ y


@given(st.integers(0, 3 ** 6 - 1), st.integers(0, 3 ** 6 - 1))
def test_digit_add_base3(x, y):
    dx = [(x // 3 ** i) % 3 for i in range(6)]
    dy = [(y // 3 ** i) % 3 for i in range(6)]
    expect = sum(((a + b) % 3) * 3 ** i for i, (a, b) in enumerate(zip(dx, dy)))
    assert digit_add(x, y, 3, 6) == expect
    assert digit_add(x, digit_neg(x, 3, 6), 3, 6) == 0


# -- embeddings ---------------------------------------------------------------

def test_prime_field_embedding():
    assert list(field_embed(gf(2), gf(4)).table) == [0, 1]


def test_f4_into_f16_generator_root():
    F16 = gf(16)
    g = field_embed(gf(4), F16)(gf(4).generator)
    assert F16.add(F16.add(F16.mul(g, g), g), 1) == 0


def test_embedding_errors():
    with pytest.raises(NoEmbedding):
        field_embed(gf(4), gf(8))
    with pytest.raises(CharMismatch):
        field_embed(gf(3), gf(4))


@pytest.mark.parametrize("sub,sup", [(2, 4), (4, 16), (2, 8), (8, 64), (4, 64), (3, 9),
                                      (16, 256), (4, 256), (9, 81)])
def test_embedding_is_homomorphism(sub, sup):
    A, B = gf(sub), gf(sup)
    t = field_embed(A, B).table
    a, b = np.meshgrid(A.elements(), A.elements(), indexing="ij")
    assert np.array_equal(t[A.add(a, b)], B.add(t[a], t[b]))
    assert np.array_equal(t[A.mul(a, b)], B.mul(t[a], t[b]))
    assert np.unique(t).size == A.order


@pytest.mark.parametrize("chain", [(2, 4, 16), (2, 8, 64), (4, 16, 256), (2, 4, 64), (3, 9, 81)])
def test_embedding_composition(chain):
    a, b, c = (gf(q) for q in chain)
    direct = field_embed(a, c).table
    composed = field_embed(b, c).table[field_embed(a, b).table]
    assert np.array_equal(direct, composed)


def test_embed_identity():
    vals = np.array([1, 2, 3])
    assert embed(gf(4), gf(4), vals) is vals


# -- basis expansion ----------------------------------------------------------

def test_mu_examples():
    b = mu_basis(gf(4), gf(2))
    assert list(mu_expand(b, 0)) == [0, 0]
    assert list(mu_expand(b, 3)) == [1, 1]          # beta + 1
    b16 = mu_basis(gf(16), gf(4))
    assert list(mu_expand(b16, gf(16).generator)) == [0, 1]
    assert mu_matrix(b, np.array([[3]])).tolist() == [[1, 1]]
    assert mu_matrix(b16, np.zeros((2, 3), dtype=np.int64)).shape == (2, 6)
    assert not mu_matrix(b16, np.zeros((2, 3), dtype=np.int64)).any()


@pytest.mark.parametrize("big,small", [(4, 2), (8, 2), (16, 4), (16, 2), (64, 8), (64, 4), (9, 3)])
def test_mu_is_bijective_and_linear(big, small):
    B, S = gf(big), gf(small)
    basis = mu_basis(B, S)
    coords = mu_expand(basis, B.elements())
    assert len({tuple(c) for c in coords}) == B.order
    assert np.array_equal(mu_contract(basis, coords), B.elements())
    emb = field_embed(S, B)
    rng = np.random.default_rng(1)
    for _ in range(50):
        a, b = rng.integers(0, big, 2)
        lam = int(rng.integers(0, small))
        lhs = mu_expand(basis, B.add(B.mul(emb(lam), int(a)), int(b)))
        rhs = S.add(S.mul(lam, mu_expand(basis, int(a))), mu_expand(basis, int(b)))
        assert np.array_equal(lhs, rhs)
    # a = sum a_i g^i
    for a in range(big):
        acc = 0
        for ai, g in zip(mu_expand(basis, a), basis.basis):
            acc = B.add(acc, B.mul(emb(int(ai)), g))
        assert acc == a


@settings(max_examples=50)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 2 ** 32 - 1))
def test_mu_matrix_roundtrip(r, c, seed):
    basis = mu_basis(gf(16), gf(4))
    S = np.random.default_rng(seed).integers(0, 16, (r, c))
    M = mu_matrix(basis, S)
    assert M.shape == (r, 2 * c)
    assert np.array_equal(mu_matrix_contract(basis, M), S)
