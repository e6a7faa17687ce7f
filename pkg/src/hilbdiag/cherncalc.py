"""Chern character / total Chern class conversion and Porteous determinants.

Classes are graded by half-degree: piece ``i`` of a :class:`KVector` lives in
cohomological degree ``2i``.  The ambient ring is anything implementing the
small algebra interface used here::

    one(), zero(), piece(x, degree), constant(x), top_degree

:class:`GradedAlgebra` (free, truncated) and
:class:`hilbdiag.kunneth.PairRing` both qualify.  Elements must support
``+``, ``-``, ``*`` among themselves and ``*`` by rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Mapping, Sequence

from .series import Series, SeriesSpace

CHARACTER = "character"
TOTAL_CHERN = "total-chern"


class GradedAlgebra:
    """Free commutative algebra on even-degree generators, zero above ``top_degree``."""

    def __init__(self, generators: Mapping[str, int] | Sequence[tuple], top_degree: int):
        gens = dict(generators)
        for name, deg in gens.items():
            if deg <= 0 or deg % 2:
                raise ValueError(f"generator {name} must have positive even degree, got {deg}")
        self.generators = gens
        self.top_degree = top_degree
        self.space = SeriesSpace(tuple(gens), weights=tuple(gens.values()), order=top_degree)

    def __repr__(self):
        return f"GradedAlgebra({self.generators}, top_degree={self.top_degree})"

    def __eq__(self, other):
        return isinstance(other, GradedAlgebra) and self.space == other.space

    def __hash__(self):
        return hash(self.space)

    def one(self) -> Series:
        return self.space.one()

    def zero(self) -> Series:
        return self.space.zero()

    def gen(self, name: str) -> Series:
        return self.space.var(name)

    def element(self, terms: Mapping) -> Series:
        return self.space.from_dict(terms)

    def piece(self, x: Series, degree: int) -> Series:
        return x.homogeneous(degree)

    def constant(self, x: Series):
        return x.constant()


@dataclass(frozen=True, eq=False)
class KVector:
    """A K-theory class through its graded pieces.

    In character form ``pieces[0]`` is the rank and ``pieces[i]`` is ``ch_i``;
    in total-Chern form ``pieces[0]`` is 1 and ``pieces[i]`` is ``c_i``.
    """

    form: str
    algebra: object
    pieces: tuple

    def __post_init__(self):
        if self.form not in (CHARACTER, TOTAL_CHERN):
            raise ValueError(f"unknown form {self.form!r}")
        alg = self.algebra
        for i, x in enumerate(self.pieces):
            if alg.piece(x, 2 * i) != x:
                raise ValueError(f"piece {i} is not homogeneous of degree {2 * i}")
        if self.form == TOTAL_CHERN and self.pieces[0] != alg.one():
            raise ValueError("total Chern class must start with 1")

    @classmethod
    def character(cls, algebra, rank, pieces=()) -> KVector:
        head = algebra.one() * Fraction(rank)
        return cls(CHARACTER, algebra, _padded(algebra, (head, *pieces)))

    @classmethod
    def total_chern(cls, algebra, pieces=()) -> KVector:
        return cls(TOTAL_CHERN, algebra, _padded(algebra, (algebra.one(), *pieces)))

    @classmethod
    def from_element(cls, algebra, x, form: str = CHARACTER, top: int | None = None) -> KVector:
        top = algebra.top_degree // 2 if top is None else top
        return cls(form, algebra, tuple(algebra.piece(x, 2 * i) for i in range(top + 1)))

    @property
    def top(self) -> int:
        return len(self.pieces) - 1

    @property
    def rank(self):
        return self.algebra.constant(self.pieces[0])

    def __getitem__(self, i: int):
        if 0 <= i < len(self.pieces):
            return self.pieces[i]
        if i == 0 and self.form == TOTAL_CHERN:
            return self.algebra.one()
        return self.algebra.zero()

    def total(self):
        out = self.algebra.zero()
        for x in self.pieces:
            out = out + x
        return out

    def truncate(self, top: int) -> KVector:
        return KVector(self.form, self.algebra, _padded(self.algebra, self.pieces[:top + 1], top))

    def __eq__(self, other) -> bool:
        if not isinstance(other, KVector) or self.form != other.form:
            return NotImplemented
        top = max(self.top, other.top)
        return all(self[i] == other[i] for i in range(top + 1))

    __hash__ = None

    def __add__(self, other: KVector) -> KVector:
        """Direct sum; only meaningful in character form."""
        _require(self, CHARACTER)
        _require(other, CHARACTER)
        top = min(self.top, other.top)
        return KVector(CHARACTER, self.algebra,
                       tuple(self[i] + other[i] for i in range(top + 1)))

    def __neg__(self) -> KVector:
        _require(self, CHARACTER)
        return KVector(CHARACTER, self.algebra, tuple(-x for x in self.pieces))

    def __mul__(self, other: KVector) -> KVector:
        """Cup product of total Chern classes (Whitney sum formula)."""
        _require(self, TOTAL_CHERN)
        _require(other, TOTAL_CHERN)
        top = min(self.top, other.top)
        pieces = [self.algebra.one()]
        for k in range(1, top + 1):
            acc = self.algebra.zero()
            for j in range(k + 1):
                acc = acc + self[j] * other[k - j]
            pieces.append(acc)
        return KVector(TOTAL_CHERN, self.algebra, tuple(pieces))


def _padded(algebra, pieces, top: int | None = None) -> tuple:
    top = algebra.top_degree // 2 if top is None else top
    pieces = tuple(pieces)[:top + 1]
    return pieces + (algebra.zero(),) * (top + 1 - len(pieces))


def _require(v: KVector, form: str):
    if v.form != form:
        raise ValueError(f"expected a class in {form} form, got {v.form}")


def ell(ch: KVector) -> KVector:
    """Total Chern class of a class given by its Chern character.

    With power sums ``p_i = i! ch_i``, Newton's identities give
    ``k c_k = sum_{i=1..k} (-1)^(i-1) c_{k-i} p_i``.
    """
    _require(ch, CHARACTER)
    alg = ch.algebra
    p = [None] + [ch[i] * factorial(i) for i in range(1, ch.top + 1)]
    c = [alg.one()]
    for k in range(1, ch.top + 1):
        acc = alg.zero()
        for i in range(1, k + 1):
            term = c[k - i] * p[i]
            acc = acc + term if i % 2 else acc - term
        c.append(acc * Fraction(1, k))
    return KVector(TOTAL_CHERN, alg, tuple(c))


def ell_inverse(c: KVector, rank) -> KVector:
    """Chern character of rank ``rank`` with total Chern class ``c``."""
    _require(c, TOTAL_CHERN)
    alg = c.algebra
    p = [None]
    for k in range(1, c.top + 1):
        # (-1)^(k-1) p_k = k c_k - sum_{i<k} (-1)^(i-1) c_{k-i} p_i
        acc = c[k] * k
        for i in range(1, k):
            term = c[k - i] * p[i]
            acc = acc - term if i % 2 else acc + term
        p.append(acc if k % 2 else -acc)
    pieces = [alg.one() * Fraction(rank)]
    pieces += [p[k] * Fraction(1, factorial(k)) for k in range(1, c.top + 1)]
    return KVector(CHARACTER, alg, tuple(pieces))


def k_negate(c: KVector) -> KVector:
    """``c(-E) = c(E)^-1`` in the truncated algebra."""
    _require(c, TOTAL_CHERN)
    alg = c.algebra
    d = [alg.one()]
    for k in range(1, c.top + 1):
        acc = alg.zero()
        for j in range(1, k + 1):
            acc = acc - c[j] * d[k - j]
        d.append(acc)
    return KVector(TOTAL_CHERN, alg, tuple(d))


def exp_class(algebra, x, top: int | None = None) -> KVector:
    """``exp(x)`` for a degree-2 element ``x``, in character form."""
    top = algebra.top_degree // 2 if top is None else top
    pieces = [algebra.one()]
    for j in range(1, top + 1):
        pieces.append(pieces[-1] * x * Fraction(1, j))
    return KVector(CHARACTER, algebra, tuple(pieces))


def twist_by_line(ch: KVector, x) -> KVector:
    """``ch(E (x) L)`` where ``c_1(L) = x``."""
    _require(ch, CHARACTER)
    alg = ch.algebra
    e = exp_class(alg, x, ch.top)
    pieces = []
    for k in range(ch.top + 1):
        acc = alg.zero()
        for j in range(k + 1):
            acc = acc + ch[k - j] * e[j]
        pieces.append(acc)
    return KVector(CHARACTER, alg, tuple(pieces))


def delta_det(t: int, size: int, c: KVector):
    """Determinant of the ``size x size`` matrix with ``(i, j)`` entry ``c_{j-i+t}``.

    ``c_0 = 1`` and ``c_i = 0`` for ``i < 0``.  Laplace expansion along rows
    with memoisation over the set of remaining columns.
    """
    _require(c, TOTAL_CHERN)
    if t < 1 or size < 1:
        raise ValueError("need t >= 1 and size >= 1")
    alg = c.algebra

    def entry(i, j):
        idx = j - i + t
        return alg.zero() if idx < 0 else c[idx]

    memo = {}

    def minor(row: int, cols: int):
        if row == size:
            return alg.one()
        key = cols
        if key in memo:
            return memo[key]
        acc = alg.zero()
        sign = 1
        for j in range(size):
            if not cols >> j & 1:
                continue
            x = entry(row, j)
            if x:
                term = x * minor(row + 1, cols & ~(1 << j))
                acc = acc + term if sign > 0 else acc - term
            sign = -sign
        memo[key] = acc
        return acc

    return minor(0, (1 << size) - 1)
