from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from hilbdiag.series import (
    NonConvergentFactor, Series, SeriesSpace, TruncationError, VariableMismatch,
    geometric_factor, product_expand,
)

T4 = SeriesSpace(("t",), order=4)
TQ = SeriesSpace(("t", "q"), weights=(1, 0), order=6, caps=(None, 3))

coeffs = st.one_of(st.integers(-20, 20),
                   st.fractions(min_value=-5, max_value=5, max_denominator=7))


@st.composite
def series_in(draw, space=TQ):
    terms = {}
    for _ in range(draw(st.integers(0, 6))):
        exps = (draw(st.integers(0, 6)), draw(st.integers(0, 3)))
        terms[exps] = draw(coeffs)
    return space.from_dict(terms)


def t(space, *pairs):
    return space.from_dict({(e,): c for e, c in pairs})


class TestExamples:
    def test_add_cancels(self):
        assert t(T4, (0, 1), (1, 1)) + t(T4, (0, 1), (1, -1)) == 2

    def test_add_identity(self):
        a = t(T4, (0, 1), (2, 23))
        assert a + T4.zero() == a

    def test_add_rational(self):
        assert t(T4, (0, 1), (2, 23)) + t(T4, (2, 1)) == t(T4, (0, 1), (2, 24))

    def test_mul_truncates(self):
        s2 = SeriesSpace(("t",), order=2)
        assert t(s2, (0, 1), (1, 1)) * t(s2, (0, 1), (1, -1)) == t(s2, (0, 1), (2, -1))
        assert t(s2, (0, 1), (2, 1)) ** 2 == t(s2, (0, 1), (2, 2))

    def test_inverse_geometric(self):
        s3 = SeriesSpace(("t",), order=3)
        assert t(s3, (0, 1), (1, -1)).inv() == t(s3, *((i, 1) for i in range(4)))
        assert s3.one().inv() == 1

    def test_inverse_weighted(self):
        s = SeriesSpace(("x",), weights=(2,), order=2)
        x = s.var("x")
        assert (1 + x).inv() == 1 - x

    def test_geometric_factor(self):
        s6 = SeriesSpace(("t",), order=6)
        assert geometric_factor(s6, (2,), 1) == t(s6, (0, 1), (2, 1), (4, 1), (6, 1))
        assert geometric_factor(T4, (2,), 2) == t(T4, (0, 1), (2, 2), (4, 3))

    def test_geometric_factor_against_repeated_product(self):
        s = SeriesSpace(("t", "q"), weights=(1, 0), order=4, caps=(None, 4))
        g = geometric_factor(s, (2, 1), 22)
        oracle = geometric_factor(s, (2, 1), 1) ** 22
        assert g == oracle
        assert g.coeff((4, 2)) == 253 == comb(23, 2)

    def test_product_expand_empty(self):
        assert product_expand(T4, []) == 1

    def test_coeff(self):
        a = t(T4, (0, 1), (2, 23))
        assert a.coeff((2,)) == 23
        assert T4.one().coeff((2,)) == 0
        with pytest.raises(TruncationError):
            a.coeff((5,))


class TestErrors:
    def test_unbounded_variable(self):
        with pytest.raises(ValueError):
            SeriesSpace(("q",), weights=(0,), order=3)

    def test_mismatched_variables(self):
        other = SeriesSpace(("s",), order=4)
        with pytest.raises(VariableMismatch):
            T4.one() + other.one()

    def test_non_invertible(self):
        with pytest.raises(ZeroDivisionError):
            T4.var("t").inv()

    def test_constant_factor(self):
        with pytest.raises(NonConvergentFactor):
            product_expand(T4, [((0,), 1)])

    def test_float_rejected(self):
        with pytest.raises(TypeError):
            T4.const(0.5)


class TestRingLaws:
    @given(series_in(), series_in(), series_in())
    @settings(max_examples=40, deadline=None)
    def test_associative_distributive(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert (a + b) - b == a

    @given(series_in())
    @settings(max_examples=40, deadline=None)
    def test_inverse_roundtrip(self, a):
        a = a + (1 - a.constant())
        assert a * a.inv() == 1

    @given(series_in(), st.integers(0, 6))
    @settings(max_examples=40, deadline=None)
    def test_truncation_commutes_with_product(self, a, order):
        b = a + 1
        assert (a * b).truncate(order) == a.truncate(order) * b.truncate(order)


class TestProductExpand:
    factors = [((1, 1), 3), ((2, 1), 22), ((2, 2), 1), ((3, 1), 2), ((4, 2), 5)]

    def test_matches_fold_of_inverses(self):
        oracle = TQ.one()
        for exps, power in self.factors:
            oracle = oracle * (TQ.one() - TQ.term(exps)).inv() ** power
        assert product_expand(TQ, self.factors) == oracle

    def test_order_independent(self):
        assert product_expand(TQ, self.factors) == product_expand(TQ, self.factors[::-1])

    def test_fraction_coefficients_stay_exact(self):
        a = TQ.from_dict({(0, 0): Fraction(1, 3), (1, 1): Fraction(-2, 5)})
        assert (a * a.inv()) == 1
        assert isinstance(a.inv().coeff((1, 1)), Fraction)

    def test_stable_and_z_series_heads(self):
        s = SeriesSpace(("t",), order=4)
        factors = [((2,), 22)] + [((2 * m,), 24) for m in range(2, 3)] + [((2,), 1)]
        assert product_expand(s, factors) == t(s, (0, 1), (2, 23), (4, 300))
        z = SeriesSpace(("z",), order=2)
        assert product_expand(z, [((m,), 23) for m in (1, 2)]) == t(z, (0, 1), (1, 23), (2, 299))
