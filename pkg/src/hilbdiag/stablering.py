"""Graded dimensions of the stable ring and of the finite rings ``R^[n]``.

``R^[n]`` is the weighted polynomial ring on ``H^2(S^[n])`` (``b2 + 1``
variables of degree 2) and one copy of ``H^*(S)`` (``b2 + 2`` variables) in
each degree ``2i`` for ``2 <= i <= n``.  The stable ring is the limit over
``n``.  Comparing these dimensions with Betti numbers gives the dimensions
of the relation ideal of ``R^[n] -> H^*(S^[n])``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .goettsche import as_integer, betti, rewritten_factors
from .series import Series, SeriesSpace, product_expand


class OutsideWindowError(ValueError):
    """The closed formula for ``dim I_k`` only holds for even ``n < k <= 4n/3``."""


class InvariantViolation(ArithmeticError):
    pass


def _t_space(order: int) -> SeriesSpace:
    return SeriesSpace(("t",), order=order)


def stable_factors(b2: int, order: int):
    for m in range(1, order // 2 + 1):
        yield (2 * m,), b2 + 1 + (m >= 2)


@lru_cache(maxsize=None)
def _stable_series(b2: int, order: int) -> Series:
    return product_expand(_t_space(order), stable_factors(b2, order))


def stable_dim(b2: int, k: int) -> int:
    """``dim R^[inf]_k``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    order = max(16, k + (-k) % 16)
    return as_integer(_stable_series(b2, order).coeff((k,)))


@lru_cache(maxsize=None)
def _finite_series(b2: int, n: int, order: int) -> Series:
    factors = [((2,), b2 + 1)] + [((2 * m,), b2 + 2) for m in range(2, n + 1)]
    return product_expand(_t_space(order), factors)


def finite_dim(b2: int, n: int, k: int) -> int:
    """``dim R^[n]_k``."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    order = max(16, k + (-k) % 16)
    return as_integer(_finite_series(b2, n, order).coeff((k,)))


def in_ideal_window(n: int, k: int) -> bool:
    return k % 2 == 0 and n < k and 3 * k <= 4 * n


def ideal_dim(b2: int, n: int, k: int) -> int:
    """``dim I_k = b_{2(k-n-1)}(S^[n]) + b_{2(k-n-2)}(S^[n])`` inside its window."""
    if not in_ideal_window(n, k):
        raise OutsideWindowError(
            f"(n={n}, k={k}) is outside even n < k <= 4n/3; use ideal_dim_oracle")
    return _betti_or_zero(b2, n, 2 * (k - n - 1)) + _betti_or_zero(b2, n, 2 * (k - n - 2))


def _betti_or_zero(b2: int, n: int, k: int) -> int:
    return betti(b2, n, k) if k >= 0 else 0


def ideal_dim_oracle(b2: int, n: int, k: int) -> int:
    """``dim R^[n]_k - b_k(S^[n])``, valid for all degrees since ``h`` is onto."""
    d = finite_dim(b2, n, k) - betti(b2, n, k)
    if d < 0:
        raise InvariantViolation(
            f"dim R^[{n}]_{k} < b_{k}(S^[{n}]) for b2={b2}; the map cannot be surjective")
    return d


@dataclass(frozen=True)
class CkPolynomial:
    """Coefficient of ``t^k`` in the rewritten product, as a polynomial in ``q``.

    ``coefficients[i]`` is the coefficient of ``q^(k-i)``.
    """

    k: int
    coefficients: tuple

    @property
    def degree(self) -> int:
        nonzero = [i for i, a in enumerate(self.coefficients) if a]
        return self.k - nonzero[0] if nonzero else -1

    @property
    def lowest_power(self) -> int:
        nonzero = [i for i, a in enumerate(self.coefficients) if a]
        return self.k - nonzero[-1] if nonzero else -1

    def __call__(self, q):
        value = 0
        for a in self.coefficients:
            value = value * q + a
        # coefficients stop at q^lowest; the remaining factor is q^(k - len + 1)
        return value * q ** (self.k - len(self.coefficients) + 1)

    def leading_sum(self, count: int) -> int:
        """``a_0 + ... + a_{count-1}``."""
        return sum(self.coefficients[:max(count, 0)])


def ceil_quarter(k: int) -> int:
    return -(-k // 4)


def c_k_poly(b2: int, k: int) -> CkPolynomial:
    if k < 0 or k % 2:
        raise ValueError("c_k(q) is defined for even k >= 0")
    # one extra power of q so the degree bound is checked rather than assumed
    space = SeriesSpace(("t", "q"), weights=(1, 0), order=k, caps=(None, k + 1))
    series = product_expand(space, rewritten_factors(b2, k))
    if series.coeff((k, k + 1)):
        raise InvariantViolation(f"c_{k}(q) has degree above {k}")
    low = ceil_quarter(k)
    coeffs = tuple(as_integer(series.coeff((k, j))) for j in range(k, low - 1, -1))
    if any(series.coeff((k, j)) for j in range(low)):
        raise InvariantViolation(f"c_{k}(q) has a term below q^{low}")
    return CkPolynomial(k, coeffs)


def z_series(b2: int, order: int) -> Series:
    """``prod_{m>=1} (1-z^m)^-(b2+1) * prod_{m>=3} (1-z^m)^-1`` up to ``z^order``."""
    space = SeriesSpace(("z",), order=order)
    factors = [((m,), b2 + 1 + (m >= 3)) for m in range(1, order + 1)]
    return product_expand(space, factors)


@dataclass(frozen=True)
class RepDims:
    sym: int
    wedge2: int
    vd: int


def sym_dim(v: int, d: int) -> int:
    return comb(v + d - 1, d) if d >= 0 else 0


def rep_dims(v: int, d: int) -> RepDims:
    """Dimensions of ``Sym^d V``, ``Wedge^2 V`` and ``V(d)`` for ``dim V = v``.

    ``V(d)`` is the complement of ``u * Sym^(d-2) V`` in ``Sym^d V``, where
    ``u`` is the inverse of a nondegenerate form.
    """
    if v < 1 or d < 0:
        raise ValueError("need v >= 1 and d >= 0")
    return RepDims(sym_dim(v, d), comb(v, 2), sym_dim(v, d) - sym_dim(v, d - 2))


@dataclass
class Example3Report:
    passed: bool
    values: dict

    def lines(self) -> list:
        return [f"{key} = {value}" for key, value in self.values.items()]


# dimensions printed for the K3 case n = 3
EXAMPLE3_EXPECTED = {"sym2": 276, "wedge2": 253, "v2": 275, "sym3": 2300, "b4": 299, "b6": 2554}


def example3_check(b2: int = 22) -> Example3Report:
    """Dimension bookkeeping of ``H^4`` and ``H^6`` of ``S^[3]`` against the printed values."""
    v = b2 + 1
    two, three = rep_dims(v, 2), rep_dims(v, 3)
    b4, b6 = betti(b2, 3, 4), betti(b2, 3, 6)
    values = {
        "sym2": two.sym,
        "wedge2": two.wedge2,
        "v2": two.vd,
        "sym3": three.sym,
        "b4": b4,
        "b6": b6,
        "sym2 + h2": two.sym + v,
        "sym3 + 1 + wedge2": three.sym + 1 + two.wedge2,
    }
    passed = (
        all(values[key] == EXAMPLE3_EXPECTED[key] for key in EXAMPLE3_EXPECTED)
        and values["sym2 + h2"] == b4
        and values["sym3 + 1 + wedge2"] == b6
        # V(2) cannot map injectively into the complement of Sym^3 in H^6
        and two.vd > b6 - three.sym
    )
    return Example3Report(passed, values)
