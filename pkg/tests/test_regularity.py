from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from crclab.code import (
    code_from_parity,
    coset_weight_distributions,
    coset_weights,
    min_distance_upto4,
    outer_distance,
)
from crclab.families import kronecker_code, lifted_code, up_family
from crclab.gf import gf
from crclab.linalg import hamming_matrix, repetition_matrix
from crclab.regularity import (
    IntersectionArray,
    NotCR,
    check_completely_regular,
    check_cr_by_distributions,
    check_uniformly_packed,
    layer_counts,
    predicted_intersection_array,
    solve_alpha,
    verify_mu_recurrence,
)

from oracles import RefField, ambient_intersection_array, frac_rank


def ref(F):
    return RefField(F.p, list(F.modulus))


def hamming(q, m):
    return code_from_parity(hamming_matrix(gf(q), m))


CODES = {
    "hamming_7_4": lambda: hamming(2, 3),
    "hamming_f3": lambda: hamming(3, 2),
    "k95": lambda: kronecker_code(2, 1, 2, 2).code,
    "lifted_C2_H2": lambda: lifted_code(2, 2, 2).code,
    "lifted_C2_H3": lambda: lifted_code(2, 3, 2).code,
    "up_nb4": lambda: up_family(2, 1, 2, 4).code,
    "rep_f2_5": lambda: code_from_parity(repetition_matrix(gf(2), 5)),
}


def test_array_basics():
    ia = IntersectionArray([9, 4], [1, 6])
    assert str(ia) == "(9, 4; 1, 6)"
    assert ia.rho == 2
    assert ia.a(9) == (0, 4, 3)
    assert ia == IntersectionArray((9, 4), (1, 6))
    with pytest.raises(ValueError):
        IntersectionArray([1], [1, 2])


def test_predicted_examples():
    assert predicted_intersection_array(4, 1, 3, 2) == IntersectionArray([315, 240], [1, 20])
    assert predicted_intersection_array(2, 1, 6, 2) == IntersectionArray([189, 124], [1, 6])
    assert predicted_intersection_array(2, 2, 2, 4) == IntersectionArray([225, 196, 144, 64],
                                                                          [1, 6, 28, 120])
    assert predicted_intersection_array(2, 1, 2, 2) == IntersectionArray([9, 4], [1, 6])


def test_cr_examples():
    assert check_completely_regular(coset_weights(CODES["k95"]())) == IntersectionArray([9, 4], [1, 6])
    res = check_completely_regular(coset_weights(lifted_code(2, 6, 2).code))
    assert res == IntersectionArray([189, 124], [1, 6])


def test_not_cr_witness_is_genuine():
    code = up_family(2, 1, 2, 4).code
    table = coset_weights(code)
    res = check_completely_regular(table)
    assert isinstance(res, NotCR)
    s1, s2 = res.syndromes
    assert table.weights[s1] == table.weights[s2] == res.layer
    assert res.counts[0] != res.counts[1]
    # recount by hand over the generator multiset
    F = code.field
    for s, (down, up) in zip(res.syndromes, res.counts):
        w = int(table.weights[s])
        nbrs = [int(table.weights[code.add_index(s, int(g))]) for g in table.generators]
        assert (nbrs.count(w - 1), nbrs.count(w + 1)) == (down, up)
    assert "layer" in str(res)


@pytest.mark.parametrize("name", list(CODES))
def test_cr_matches_ambient_oracle(name):
    code = CODES[name]()
    res = check_completely_regular(coset_weights(code))
    oracle = ambient_intersection_array(ref(code.field), code.Hr.data.tolist())
    if oracle is None:
        assert isinstance(res, NotCR)
    else:
        assert res == IntersectionArray(*oracle)


@pytest.mark.parametrize("name", list(CODES))
def test_two_cr_verifiers_agree(name):
    code = CODES[name]()
    table = coset_weights(code)
    ok, _ = check_cr_by_distributions(code)
    assert ok == isinstance(check_completely_regular(table), IntersectionArray)


def test_distribution_verifier_finds_non_cr():
    ok, (s1, s2) = check_cr_by_distributions(up_family(2, 1, 2, 5).code)
    assert not ok
    D = coset_weight_distributions(up_family(2, 1, 2, 5).code)
    assert not np.array_equal(D[s1], D[s2])


def test_mu_recurrence_examples():
    t = coset_weights(CODES["k95"]())
    assert verify_mu_recurrence(t, IntersectionArray([9, 4], [1, 6]))
    assert not verify_mu_recurrence(t, IntersectionArray([9, 4], [1, 5]))
    t = coset_weights(hamming(2, 3))
    assert verify_mu_recurrence(t, IntersectionArray([7], [1]))


def test_up_examples():
    c = check_uniformly_packed(up_family(2, 1, 2, 4).code)
    assert (c.rho, c.s, c.is_up) == (3, 3, True)
    c = check_uniformly_packed(up_family(2, 1, 2, 5).code)
    assert (c.rho, c.s, c.is_up) == (3, 4, False)
    c = check_uniformly_packed(hamming(2, 3), with_alpha=True)
    assert c.is_up and c.alpha == (Fraction(1), Fraction(1))


def alpha_holds(code, alpha):
    D = coset_weight_distributions(code)[:, :len(alpha)]
    return all(sum(a * int(f) for a, f in zip(alpha, row)) == 1 for row in D)


def test_alpha_examples():
    assert solve_alpha(hamming(2, 3)) == (Fraction(1), Fraction(1))
    code = up_family(2, 1, 2, 4).code
    alpha = solve_alpha(code)
    assert alpha is not None and len(alpha) == 4
    assert alpha_holds(code, alpha)
    assert solve_alpha(up_family(2, 1, 2, 5).code) is None
    k95 = CODES["k95"]()
    alpha = solve_alpha(k95)
    assert alpha_holds(k95, alpha)


def test_alpha_none_means_inconsistent():
    code = up_family(2, 1, 2, 5).code
    D = np.unique(coset_weight_distributions(code)[:, :4], axis=0)
    A = D.tolist()
    aug = [row + [1] for row in A]
    assert frac_rank(aug) > frac_rank(A)


@pytest.mark.parametrize("name", list(CODES))
def test_radius_distance_relations(name):
    code = CODES[name]()
    table = coset_weights(code)
    s = outer_distance(code)
    assert table.rho <= s
    res = check_completely_regular(table)
    if isinstance(res, IntersectionArray):
        assert table.rho == s
        assert check_uniformly_packed(code, table).is_up
        assert verify_mu_recurrence(table, res)
        assert res.b[0] == code.n * (code.Q - 1)
        if min_distance_upto4(code) not in (1, 2):
            assert res.c[0] == 1
        assert all(x > 0 for x in res.b + res.c)


def test_layer_counts_total():
    table = coset_weights(CODES["k95"]())
    down, up = layer_counts(table)
    assert down[0] == 0 and up[0] == 9
    assert (down + up <= 9).all()
