"""The cohomology ring of a surface with ``b1 = 0`` as a finite graded ring.

Basis: index 0 is the unit (degree 0), indices ``1..b2`` are ``e_1..e_b2``
(degree 2) and index ``b2 + 1`` is the point class (degree 4).  Products are
``e_i e_j = Q_ij pt`` for the Gram matrix ``Q``; integration reads off the
coefficient of ``pt``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence


class DegenerateGram(ValueError):
    pass


def _frac_matrix(rows) -> tuple:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def invert(matrix) -> tuple:
    """Exact inverse of a square rational matrix by Gauss-Jordan elimination."""
    n = len(matrix)
    a = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(_frac_matrix(matrix))]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            raise DegenerateGram("matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        inv_p = 1 / a[col][col]
        a[col] = [x * inv_p for x in a[col]]
        for r in range(n):
            f = a[r][col]
            if r != col and f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def determinant(matrix) -> Fraction:
    a = [list(row) for row in _frac_matrix(matrix)]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def hyperbolic_gram(blocks: int = 11) -> tuple:
    """Orthogonal sum of ``blocks`` copies of ``[[0, 1], [1, 0]]``."""
    n = 2 * blocks
    return tuple(tuple(int(j == i ^ 1) for j in range(n)) for i in range(n))


def random_gram(rng: random.Random, b2: int = 22, spread: int = 2) -> tuple:
    """Random symmetric integer matrix with nonzero determinant."""
    while True:
        q = [[0] * b2 for _ in range(b2)]
        for i in range(b2):
            for j in range(i, b2):
                q[i][j] = q[j][i] = rng.randint(-spread, spread)
        if determinant(q):
            return tuple(tuple(row) for row in q)


@dataclass(frozen=True)
class CohClass:
    """``(r, l, s)`` with ``r`` in degree 0, ``l`` in ``H^2`` and ``s`` the point coefficient."""

    r: Fraction
    l: tuple
    s: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r))
        object.__setattr__(self, "l", tuple(Fraction(x) for x in self.l))
        object.__setattr__(self, "s", Fraction(self.s))

    def __add__(self, other: CohClass) -> CohClass:
        return CohClass(self.r + other.r, tuple(a + b for a, b in zip(self.l, other.l)), self.s + other.s)

    def __neg__(self) -> CohClass:
        return CohClass(-self.r, tuple(-a for a in self.l), -self.s)

    def __sub__(self, other: CohClass) -> CohClass:
        return self + (-other)

    def scale(self, c) -> CohClass:
        c = Fraction(c)
        return CohClass(self.r * c, tuple(a * c for a in self.l), self.s * c)

    def coordinates(self) -> tuple:
        """Coefficients on the ring basis ``(1, e_1, ..., e_b2, pt)``."""
        return (self.r, *self.l, self.s)


class FiniteGradedRing:
    """``H^*(S, Q)`` of a surface with ``b1 = 0``; see the module docstring."""

    def __init__(self, gram: Sequence[Sequence], todd=None):
        q = _frac_matrix(gram)
        b2 = len(q)
        if any(len(row) != b2 for row in q):
            raise ValueError("Gram matrix must be square")
        if any(q[i][j] != q[j][i] for i in range(b2) for j in range(b2)):
            raise ValueError("Gram matrix must be symmetric")
        if b2 and not determinant(q):
            raise DegenerateGram("Gram matrix is degenerate")
        self.gram = q
        self.b2 = b2
        self.gram_inverse = invert(q) if b2 else ()
        self.pt = b2 + 1
        self.degrees = (0,) + (2,) * b2 + (4,)
        self.top_degree = 4
        self.unit_index = 0
        self._table = self._mul_table()
        self.todd = self.cls(1, [0] * b2, 2) if todd is None else self._as_class(todd)

    def __repr__(self):
        return f"FiniteGradedRing(b2={self.b2})"

    def __eq__(self, other):
        return (isinstance(other, FiniteGradedRing) and self.gram == other.gram
                and self.todd == other.todd)

    def __hash__(self):
        return hash((self.gram, self.todd))

    @property
    def dim(self) -> int:
        return self.b2 + 2

    def _mul_table(self) -> dict:
        table = {}
        pt = self.pt
        for i in range(self.dim):
            table[0, i] = table[i, 0] = {i: Fraction(1)}
        for i in range(1, pt):
            for j in range(1, pt):
                if self.gram[i - 1][j - 1]:
                    table[i, j] = {pt: self.gram[i - 1][j - 1]}
        return table

    def mul_basis(self, i: int, j: int) -> dict:
        """Product of basis elements as ``{index: coefficient}``."""
        return self._table.get((i, j), {})

    def integrate_basis(self, i: int) -> Fraction:
        return Fraction(int(i == self.pt))

    def basis_name(self, i: int) -> str:
        if i == 0:
            return "1"
        if i == self.pt:
            return "pt"
        return f"e{i}"

    # classes

    def cls(self, r=0, l=None, s=0) -> CohClass:
        return CohClass(r, tuple(l) if l is not None else (0,) * self.b2, s)

    def _as_class(self, value) -> CohClass:
        if isinstance(value, CohClass):
            c = value
        else:
            r, l, s = value
            if l == 0 or l is None:
                l = [0] * self.b2
            c = CohClass(r, tuple(l), s)
        if len(c.l) != self.b2:
            raise ValueError(f"class has {len(c.l)} degree-2 coordinates, ring has b2={self.b2}")
        return c

    def basis_class(self, i: int) -> CohClass:
        coords = [0] * self.dim
        coords[i] = 1
        return self.from_coordinates(coords)

    def from_coordinates(self, coords) -> CohClass:
        coords = list(coords)
        return CohClass(coords[0], tuple(coords[1:-1]), coords[-1])

    def unit(self) -> CohClass:
        return self.cls(1)

    def point(self) -> CohClass:
        return self.cls(s=1)

    def h2_product(self, l, m) -> Fraction:
        q = self.gram
        return sum((a * q[i][j] * m[j] for i, a in enumerate(l) if a for j in range(self.b2)),
                   Fraction(0))

    def mul(self, x: CohClass, y: CohClass) -> CohClass:
        return CohClass(
            x.r * y.r,
            tuple(x.r * b + y.r * a for a, b in zip(x.l, y.l)),
            x.r * y.s + x.s * y.r + self.h2_product(x.l, y.l),
        )

    def integrate(self, x: CohClass) -> Fraction:
        return x.s

    def inverse(self, x: CohClass) -> CohClass:
        """Multiplicative inverse of a class with nonzero rank."""
        if not x.r:
            raise ZeroDivisionError("class of rank 0 is not invertible")
        u = x.scale(1 / x.r) - self.unit()  # nilpotent part, u^3 = 0
        inv = self.unit() - u + self.mul(u, u)
        return inv.scale(1 / x.r)


def make_k3(gram=None) -> FiniteGradedRing:
    """K3-type ring with Todd class ``(1, 0, 2)``; default Gram is eleven hyperbolic planes."""
    return FiniteGradedRing(hyperbolic_gram() if gram is None else gram)


def load_surface(path) -> FiniteGradedRing:
    """Read ``{"b2": .., "gram": [[..]], "todd": [r, l, s]}``; missing keys take K3 defaults."""
    data = json.loads(Path(path).read_text())
    return surface_from_config(data)


def surface_from_config(data: dict) -> FiniteGradedRing:
    gram = data.get("gram")
    if gram is None:
        b2 = data.get("b2", 22)
        if b2 % 2:
            raise ValueError("default Gram matrix needs even b2; give 'gram' explicitly")
        gram = hyperbolic_gram(b2 // 2)
    elif "b2" in data and data["b2"] != len(gram):
        raise ValueError(f"b2={data['b2']} does not match a {len(gram)}x{len(gram)} Gram matrix")
    todd = data.get("todd")
    if todd is not None:
        todd = [Fraction(todd[0]), todd[1] if isinstance(todd[1], list) else 0, Fraction(todd[2])]
    return FiniteGradedRing(gram, todd)


def dualize(x: CohClass) -> CohClass:
    """``x^v``: sign ``(-1)^i`` on ``H^{2i}``."""
    return CohClass(x.r, tuple(-a for a in x.l), x.s)


def pairing_with_td(ring: FiniteGradedRing, x: CohClass, y: CohClass) -> Fraction:
    """``int_S x^v . y . td_S``."""
    return ring.integrate(ring.mul(ring.mul(dualize(x), y), ring.todd))


def mukai_vector_pairing(ring: FiniteGradedRing, v: CohClass, w: CohClass) -> Fraction:
    """``<(r, l, s), (r', l', s')> = l.l' - r s' - s r'``."""
    return ring.h2_product(v.l, w.l) - v.r * w.s - v.s * w.r


def poincare_dual_basis(ring: FiniteGradedRing) -> list:
    """``f^a`` with ``int f_a f^b = delta_ab`` for the ring basis ``f_a``."""
    dual = [ring.point()]
    for i in range(ring.b2):
        dual.append(ring.cls(l=ring.gram_inverse[i]))
    dual.append(ring.unit())
    return dual


def euler_pairing_gram(ring: FiniteGradedRing) -> tuple:
    """Matrix of ``int f_a f_b`` over the full basis."""
    basis = [ring.basis_class(i) for i in range(ring.dim)]
    return tuple(tuple(ring.integrate(ring.mul(a, b)) for b in basis) for a in basis)
