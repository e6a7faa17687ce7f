import pytest

from hilbdiag.goettsche import betti
from hilbdiag.stablering import (
    EXAMPLE3_EXPECTED, CkPolynomial, InvariantViolation, OutsideWindowError, c_k_poly, ceil_quarter,
    example3_check, finite_dim, ideal_dim, ideal_dim_oracle, in_ideal_window, rep_dims, stable_dim,
    z_series,
)


def monomial_count(weights, k):
    """Number of monomials of weighted degree k, one generator per entry of weights."""
    ways = [1] + [0] * k
    for w in weights:
        for d in range(w, k + 1):
            ways[d] += ways[d - w]
    return ways[k]


def generator_weights(b2, n, k):
    top = k // 2 if n is None else n
    return [2] * (b2 + 1) + [2 * m for m in range(2, top + 1) for _ in range(b2 + 2)]


@pytest.mark.parametrize("k,expected", [(0, 1), (2, 23), (4, 300), (6, 2876)])
def test_stable_dim_values(k, expected):
    assert stable_dim(22, k) == expected


@pytest.mark.parametrize("b2", [0, 3, 22])
def test_dims_match_monomial_count(b2):
    for k in range(0, 21, 2):
        assert stable_dim(b2, k) == monomial_count(generator_weights(b2, None, k), k)
        for n in (1, 2, 3, 5):
            assert finite_dim(b2, n, k) == monomial_count(generator_weights(b2, n, k), k)


def test_finite_dim_values():
    assert finite_dim(22, 1, 4) == 276
    assert finite_dim(22, 3, 6) == 2876
    assert finite_dim(22, 3, 5) == 0


def test_ideal_values():
    assert ideal_dim(22, 3, 4) == 1
    assert ideal_dim(22, 9, 12) == 323
    assert ideal_dim_oracle(22, 9, 12) == 323
    assert ideal_dim_oracle(22, 3, 4) == 1
    assert ideal_dim_oracle(22, 4, 6) == 24


def test_window():
    assert in_ideal_window(3, 4) and in_ideal_window(9, 12)
    assert not in_ideal_window(4, 6) and not in_ideal_window(3, 3) and not in_ideal_window(6, 7)
    with pytest.raises(OutsideWindowError):
        ideal_dim(22, 4, 6)
    with pytest.raises(OutsideWindowError):
        ideal_dim(22, 2, 6)


def test_formula_matches_oracle_in_window():
    for n in range(2, 31):
        for k in range(n + 1, 4 * n // 3 + 1):
            if k % 2 == 0:
                assert ideal_dim(22, n, k) == ideal_dim_oracle(22, n, k), (n, k)


def test_no_low_degree_relations():
    for n in range(1, 13):
        for k in range(0, n + 1):
            assert ideal_dim_oracle(22, n, k) == 0


def test_first_relations():
    for n in range(1, 16):
        if n % 2:
            assert ideal_dim_oracle(22, n, n + 1) == 1
        else:
            assert ideal_dim_oracle(22, n, n + 1) == 0
            assert ideal_dim_oracle(22, n, n + 2) == 24


def test_oracle_rejects_impossible_dimensions(monkeypatch):
    import hilbdiag.stablering as sr

    monkeypatch.setattr(sr, "finite_dim", lambda b2, n, k: 0)
    with pytest.raises(InvariantViolation):
        sr.ideal_dim_oracle(22, 2, 4)


class TestCk:
    def test_c0(self):
        c = c_k_poly(22, 0)
        assert c.coefficients == (1,) and c(1) == 1 and c(5) == 1

    @pytest.mark.parametrize("k", range(0, 17, 2))
    def test_structure(self, k):
        c = c_k_poly(22, k)
        assert c.degree == k
        assert c.lowest_power == ceil_quarter(k)
        assert c(1) == stable_dim(22, k)

    def test_leading_sums(self):
        for k in range(2, 15, 2):
            c = c_k_poly(22, k)
            for n in range(1, k):
                assert stable_dim(22, k) - betti(22, n, k) == c.leading_sum(k - n), (k, n)

    def test_k8_coefficients(self):
        assert c_k_poly(22, 8).coefficients == (1, 23, 299, 2829, 18999, 298, 1)

    def test_odd_k(self):
        with pytest.raises(ValueError):
            c_k_poly(22, 3)

    def test_evaluation(self):
        c = CkPolynomial(4, (2, 0, 3))
        assert c(2) == 2 * 16 + 3 * 4


def test_z_series():
    z = z_series(22, 8)
    assert [z.coeff((i,)) for i in range(3)] == [1, 23, 299]
    for i in range(9):
        prev = stable_dim(22, 2 * i - 4) if i >= 2 else 0
        assert z.coeff((i,)) == stable_dim(22, 2 * i) - prev
    assert [z_series(0, 5).coeff((i,)) for i in range(6)] == [1, 1, 2, 4, 7, 11]


def test_rep_dims():
    two, three = rep_dims(23, 2), rep_dims(23, 3)
    assert (two.sym, two.wedge2, two.vd) == (276, 253, 275)
    assert three.sym == 2300
    assert all(rep_dims(1, d).sym == 1 for d in range(6))


def test_example3():
    report = example3_check()
    assert report.passed
    assert {k: report.values[k] for k in EXAMPLE3_EXPECTED} == EXAMPLE3_EXPECTED
    assert not example3_check(21).passed
