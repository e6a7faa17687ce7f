import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hilbdiag import cherncalc as cc
from hilbdiag.verify import random_character, random_total_chern

A = cc.GradedAlgebra({"a1": 2, "a2": 4}, 4)
a1, a2 = A.gen("a1"), A.gen("a2")
X = cc.GradedAlgebra({"x": 2, "y": 4}, 16)
x, y = X.gen("x"), X.gen("y")
seeds = st.integers(0, 2**32 - 1)


def test_ell_low_degree():
    ch = cc.KVector.character(A, 3, [a1, a2])
    c = cc.ell(ch)
    assert c.pieces == (A.one(), a1, a1 * a1 * Fraction(1, 2) - a2)


def test_ell_line_bundle():
    assert cc.ell(cc.exp_class(X, x)) == cc.KVector.total_chern(X, [x])


def test_ell_rank_only():
    assert cc.ell(cc.KVector.character(X, 7)) == cc.KVector.total_chern(X)


def test_ell_inverse_low_degree():
    c = cc.KVector.total_chern(A, [a1, a2])
    assert cc.ell_inverse(c, 5).pieces == (A.one() * 5, a1, a1 * a1 * Fraction(1, 2) - a2)
    assert cc.ell_inverse(cc.KVector.total_chern(A), Fraction(2, 3)) == cc.KVector.character(A, Fraction(2, 3))


def test_k_negate():
    line = cc.k_negate(cc.KVector.total_chern(X, [x]))
    assert all(line[i] == x ** i * (-1) ** i for i in range(9))
    neg = cc.k_negate(cc.KVector.total_chern(A, [a1, a2]))
    assert neg[2] == a1 * a1 - a2
    assert neg * cc.KVector.total_chern(A, [a1, a2]) == cc.KVector.total_chern(A)


def test_twist():
    ch = cc.KVector.character(X, 1)
    assert cc.twist_by_line(ch, X.zero()) == ch
    assert cc.twist_by_line(ch, x) == cc.exp_class(X, x)
    other = random_character(random.Random(3), X)
    assert cc.twist_by_line(cc.twist_by_line(other, x), -x) == other


def test_delta_small():
    c = cc.KVector.total_chern(X, [x, y])
    assert cc.delta_det(1, 2, c) == x * x - y
    line = cc.KVector.total_chern(X, [x])
    assert all(cc.delta_det(1, m, line) == x ** m for m in range(1, 9))


def test_delta_against_permutation_expansion():
    from itertools import permutations

    rng = random.Random(11)
    c = random_total_chern(rng, X)
    for t in (1, 2, 3):
        for size in (1, 2, 3, 4):
            oracle = X.zero()
            for perm in permutations(range(size)):
                sign = 1
                for i in range(size):
                    for j in range(i + 1, size):
                        if perm[i] > perm[j]:
                            sign = -sign
                term = X.one() * sign
                for i, j in enumerate(perm):
                    idx = j - i + t
                    term = term * (c[idx] if idx >= 0 else X.zero())
                oracle = oracle + term
            assert cc.delta_det(t, size, c) == oracle


@given(seeds)
@settings(max_examples=15, deadline=None)
def test_roundtrips(seed):
    rng = random.Random(seed)
    ch = random_character(rng, X)
    assert cc.ell_inverse(cc.ell(ch), ch.rank) == ch
    c = random_total_chern(rng, X)
    assert cc.ell(cc.ell_inverse(c, 2)) == c


@given(seeds)
@settings(max_examples=15, deadline=None)
def test_whitney_and_negation(seed):
    rng = random.Random(seed)
    e, f = random_character(rng, X), random_character(rng, X)
    assert cc.ell(e + f) == cc.ell(e) * cc.ell(f)
    assert cc.ell(-e) == cc.k_negate(cc.ell(e))


@given(seeds)
@settings(max_examples=10, deadline=None)
def test_delta_one_is_signed_negation(seed):
    c = random_total_chern(random.Random(seed), X)
    neg = cc.k_negate(c)
    for m in range(1, 9):
        assert cc.delta_det(1, m, c) == neg[m] * (-1) ** m


@pytest.mark.parametrize("r", range(1, 6))
def test_splitting_principle(r):
    roots = cc.GradedAlgebra({f"x{i}": 2 for i in range(r)}, 10)
    xs = [roots.gen(f"x{i}") for i in range(r)]
    ch = cc.KVector.character(roots, 0)
    product = roots.one()
    for v in xs:
        ch = ch + cc.exp_class(roots, v)
        product = product * (roots.one() + v)
    assert ch.rank == r
    assert cc.ell(ch) == cc.KVector.from_element(roots, product, cc.TOTAL_CHERN)


class TestValidation:
    def test_odd_generator(self):
        with pytest.raises(ValueError):
            cc.GradedAlgebra({"x": 3}, 6)

    def test_inhomogeneous_piece(self):
        with pytest.raises(ValueError):
            cc.KVector.character(X, 1, [x + y])

    def test_total_chern_needs_unit(self):
        with pytest.raises(ValueError):
            cc.KVector(cc.TOTAL_CHERN, X, (X.one() * 2,))

    def test_wrong_form(self):
        with pytest.raises(ValueError):
            cc.ell(cc.KVector.total_chern(X, [x]))
        with pytest.raises(ValueError):
            cc.delta_det(0, 2, cc.KVector.total_chern(X, [x]))
