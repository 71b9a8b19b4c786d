"""Operator-model oracle: product actions, model builders, bi-freeness."""

import random
from fractions import Fraction as F
from itertools import product as iproduct

import numpy as np
import pytest

from bifree.oracle import (
    LEFT,
    RIGHT,
    FactorMismatch,
    ProductState,
    TruncationUnsound,
    TwoFacedPairRep,
    commutator,
    gaussian_pair_rep,
    identity_matrix,
    rational_matrix,
    shift_pair_rep,
    state_projector,
    sum_two_bands_table,
    two_bands_table,
)
from bifree.partial_r import TwoBandsTable, biconvolve


def rand_rep(rng, dim, lo=-2, hi=2):
    mk = lambda: [[F(rng.randint(lo, hi)) for _ in range(dim)] for _ in range(dim)]
    return TwoFacedPairRep(dim, {0: mk()}, {0: mk()})


def centered(rng, dim):
    mat = [[F(rng.randint(-2, 2)) for _ in range(dim)] for _ in range(dim)]
    mat[0][0] = F(0)
    return rational_matrix(mat)


def two_factor_product(rng, dims=(2, 3), max_word_len=6):
    return ProductState([rand_rep(rng, d) for d in dims], max_word_len)


def test_identity_lifts_to_identity():
    rng = random.Random(0)
    p = two_factor_product(rng, (2, 2), max_word_len=3)
    n = p.dim()
    for k in range(2):
        assert (p.left_action(k, identity_matrix(2)) == identity_matrix(n)).all()
        assert (p.right_action(k, identity_matrix(2)) == identity_matrix(n)).all()


def test_scalar_action_on_state_vector():
    # an operator fixing the factor state vector acts on the product state
    # vector by its expectation alone
    rng = random.Random(1)
    p = two_factor_product(rng, (3, 2), max_word_len=3)
    mat = rational_matrix([[F(7, 2), 1, 0], [0, 1, 1], [0, 2, 0]])
    out = p.apply_left(0, mat, p.vacuum())
    assert out == {(): F(7, 2)}
    out = p.apply_right(0, mat, p.vacuum())
    assert out == {(): F(7, 2)}


def test_left_and_right_agree_on_state_vector():
    rng = random.Random(2)
    p = two_factor_product(rng, (3, 3), max_word_len=3)
    mat = centered(rng, 3)
    mat[0, 0] = F(5)
    assert p.apply_left(1, mat, p.vacuum()) == p.apply_right(1, mat, p.vacuum())


def test_centered_cross_moment_vanishes():
    rng = random.Random(3)
    p = two_factor_product(rng, (3, 3), max_word_len=4)
    a = centered(rng, 3)
    b = centered(rng, 3)
    vec = p.apply_left(0, a, p.apply_right(1, b, p.vacuum()))
    assert p.expectation(vec) == 0


def _alternating_patterns(length, first_choices=(0, 1)):
    if length == 0:
        return [()]
    out = []
    for first in first_choices:
        pattern = [first]
        for _ in range(length - 1):
            pattern.append(1 - pattern[-1])
        out.append(tuple(pattern))
    return out


def _pair_expectation(rep, a, b):
    single = ProductState([rep], max_word_len=2)
    return single.expectation(
        single.apply_left(0, a, single.apply_right(0, b, single.vacuum()))
    )


def test_alternating_centered_factorization():
    # phi(a_m .. a_1 b_n .. b_1) = [m == n] * prod [alpha_k == beta_k] * phi(a_k b_k)
    rng = random.Random(4)
    reps = [rand_rep(rng, 3), rand_rep(rng, 2)]
    p = ProductState(reps, max_word_len=6)
    for m in range(4):
        for n in range(4):
            for alpha in _alternating_patterns(m):
                for beta in _alternating_patterns(n):
                    lefts = [centered(rng, reps[k].dim) for k in alpha]
                    rights = [centered(rng, reps[k].dim) for k in beta]
                    vec = p.vacuum()
                    for k, mat in zip(beta, rights):
                        vec = p.apply_right(k, mat, vec)
                    for k, mat in zip(alpha, lefts):
                        vec = p.apply_left(k, mat, vec)
                    got = p.expectation(vec)
                    if m == n and alpha == beta:
                        expected = F(1)
                        for k, a, b in zip(alpha, lefts, rights):
                            expected *= _pair_expectation(reps[k], a, b)
                    else:
                        expected = F(0)
                    assert got == expected


def test_joint_moment_basics():
    rng = random.Random(5)
    reps = [rand_rep(rng, 3), rand_rep(rng, 2)]
    p = ProductState(reps, max_word_len=5)
    assert p.joint_moment([]) == 1
    # a single lifted variable keeps its factor moment
    for k, rep in enumerate(reps):
        for side in (LEFT, RIGHT):
            for power in range(1, 5):
                word = [(side, k, 0)] * power
                assert p.joint_moment(word) == rep.moment([(side, 0)] * power)


def test_restriction_fidelity():
    rng = random.Random(6)
    reps = [rand_rep(rng, 3), rand_rep(rng, 3)]
    p = ProductState(reps, max_word_len=6)
    for k, rep in enumerate(reps):
        for sides in iproduct((LEFT, RIGHT), repeat=3):
            word = [(s, k, 0) for s in sides]
            assert p.joint_moment(word) == rep.moment([(s, 0) for s in sides])


def test_scalar_pair_sum():
    c1, c2, c3, c4 = F(1), F(2), F(3), F(4)
    mk = lambda c: TwoFacedPairRep(1, {0: [[c]]}, {0: [[c]]})
    r1 = TwoFacedPairRep(1, {0: [[c1]]}, {0: [[c2]]})
    r2 = TwoFacedPairRep(1, {0: [[c3]]}, {0: [[c4]]})
    p = ProductState([r1, r2], max_word_len=6)
    got = sum_two_bands_table(p, (3, 3))
    assert got == TwoBandsTable.product(
        [(c1 + c3) ** n for n in range(4)], [(c2 + c4) ** n for n in range(4)]
    )


def test_truncation_guard():
    rng = random.Random(7)
    p = two_factor_product(rng, (2, 2), max_word_len=3)
    with pytest.raises(TruncationUnsound):
        p.joint_moment([(LEFT, 0, 0)] * 4)
    with pytest.raises(TruncationUnsound):
        sum_two_bands_table(p, (2, 2))


def test_factor_mismatch():
    rng = random.Random(8)
    p = two_factor_product(rng, (2, 3), max_word_len=3)
    with pytest.raises(FactorMismatch):
        p.apply_left(5, identity_matrix(2), p.vacuum())
    with pytest.raises(FactorMismatch):
        p.apply_left(0, identity_matrix(3), p.vacuum())
    with pytest.raises(FactorMismatch):
        p.factors[0].operator(LEFT, 9)


def test_basis_enumeration_is_deterministic():
    rng = random.Random(9)
    p = two_factor_product(rng, (2, 3), max_word_len=2)
    words = p.basis()
    assert words[0] == ()
    lengths = [len(w) for w in words]
    assert lengths == sorted(lengths)
    # within a length: factor indices first, then coordinates, lexicographic
    assert words[1:5] == [((0, 1),), ((1, 1),), ((1, 2),), ((0, 1), (1, 1))]
    q = two_factor_product(random.Random(9), (2, 3), max_word_len=2)
    assert q.basis() == words


def test_cross_factor_commutators_vanish():
    rng = random.Random(10)
    reps = [rand_rep(rng, 2), rand_rep(rng, 3)]
    p = ProductState(reps, max_word_len=4)
    a0 = p.left_action(0, reps[0].left_ops[0])
    b1 = p.right_action(1, reps[1].right_ops[0])
    n = p.dim()
    zero = np.full((n, n), F(0), dtype=object)
    assert (commutator(a0, b1) == zero).all()
    a1 = p.left_action(1, reps[1].left_ops[0])
    b0 = p.right_action(0, reps[0].right_ops[0])
    assert (commutator(a1, b0) == zero).all()


# -- model builders --


def test_shift_identity_omega_gives_shift_pair():
    rep = shift_pair_rep(4, [[1, 0], [0, 1]])
    table = two_bands_table(rep, (3, 3))
    expected = [[F(int(m == 0 and n == 0)) for n in range(4)] for m in range(4)]
    assert table == TwoBandsTable(expected)


def test_shift_commutator_shape():
    for omega, det in [([[1, 0], [0, 1]], 1), ([[1, 1], [-1, 1]], 2)]:
        rep = shift_pair_rep(5, omega)
        comm = commutator(rep.left_ops[0], rep.right_ops[0])
        proj = state_projector(5)
        delta = comm - (-F(det)) * proj
        for c in rep.reliable:
            assert all(delta[r, c] == 0 for r in range(5))


def test_gaussian_first_moments():
    h_l, hs_l = [F(1), F(2)], [F(3), F(-1)]
    h_r, hs_r = [F(0), F(1)], [F(2), F(5)]
    rep = gaussian_pair_rep(h_l, hs_l, h_r, hs_r, fock_cutoff=3)
    assert rep.moment([(LEFT, 0)]) == 0
    assert rep.moment([(RIGHT, 0)]) == 0
    pair = lambda u, v: sum(x * y for x, y in zip(u, v))
    assert rep.moment([(LEFT, 0), (RIGHT, 0)]) == pair(h_r, hs_l)
    assert rep.moment([(LEFT, 0), (LEFT, 0)]) == pair(h_l, hs_l)


def test_gaussian_commutator_formula():
    rng = random.Random(12)
    for _ in range(5):
        vecs = [[F(rng.randint(-2, 2)) for _ in range(2)] for _ in range(4)]
        h_l, hs_l, h_r, hs_r = vecs
        rep = gaussian_pair_rep(h_l, hs_l, h_r, hs_r, fock_cutoff=3)
        pair = lambda u, v: sum(x * y for x, y in zip(u, v))
        lam = pair(h_r, hs_l) - pair(h_l, hs_r)
        comm = commutator(rep.left_ops[0], rep.right_ops[0])
        delta = comm - lam * state_projector(rep.dim)
        for c in rep.reliable:
            assert all(delta[r, c] == 0 for r in range(rep.dim))


def test_one_variable_convolution_against_oracle():
    from bifree.transforms import free_convolve1

    rng = random.Random(14)
    for _ in range(3):
        reps = [rand_rep(rng, rng.choice([2, 3])) for _ in range(2)]
        p = ProductState(reps, max_word_len=6)
        oracle = [p.expectation(p.vacuum())]
        vec = p.vacuum()
        for _ in range(6):
            vec = p.apply_sum(LEFT, 0, vec)
            oracle.append(p.expectation(vec))
        factor_moments = [
            [rep.moment([(LEFT, 0)] * n) for n in range(7)] for rep in reps
        ]
        assert tuple(oracle) == free_convolve1(*factor_moments)


def test_additivity_against_series_route():
    rng = random.Random(13)
    for _ in range(3):
        reps = [rand_rep(rng, rng.choice([2, 3])) for _ in range(2)]
        t1 = two_bands_table(reps[0], (3, 3))
        t2 = two_bands_table(reps[1], (3, 3))
        p = ProductState(reps, max_word_len=6)
        assert sum_two_bands_table(p, (3, 3)) == biconvolve(t1, t2)
