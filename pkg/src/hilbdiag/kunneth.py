"""Kunneth-form classes on ``M x S`` and ``M x S x M`` and the diagonal formula.

For classes ``a1, a2`` on ``M x S`` the diagonal formula reads

    gamma(a1, a2) = c_m( ell( pi13_*[ pi12^*(a1)^v . pi23^*(a2) . pi2^*(td_S) ] )^-1 )

Factor rings only need ``dim``, ``degrees``, ``top_degree``, ``mul_basis``
and ``basis_name``; the middle ring additionally needs ``integrate_basis``
and ``todd``.  :class:`hilbdiag.surface.FiniteGradedRing` and
:class:`TruncatedFreeAlgebra` both fit.  Everything is even-degree, so no
Koszul signs appear.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .cherncalc import KVector, ell, k_negate
from .surface import CohClass, FiniteGradedRing, poincare_dual_basis


class RingMismatch(ValueError):
    pass


class OddDegreeError(ValueError):
    pass


class TruncationTooLow(ValueError):
    pass


def _check_even(ring):
    if any(d % 2 for d in ring.degrees):
        raise OddDegreeError(f"{ring!r} has odd-degree basis elements")


class TruncatedFreeAlgebra:
    """Free commutative algebra on even-degree generators, as a finite ring.

    The basis is every monomial of degree at most ``top_degree``; products of
    higher degree vanish.
    """

    def __init__(self, generators: dict, top_degree: int):
        gens = dict(generators)
        if any(d <= 0 or d % 2 for d in gens.values()):
            raise OddDegreeError("generators need positive even degrees")
        self.generators = gens
        self.top_degree = top_degree
        names = list(gens)
        degs = [gens[n] for n in names]
        basis = [()]
        for exps in itertools.product(*(range(top_degree // d + 1) for d in degs)):
            if any(exps) and sum(e * d for e, d in zip(exps, degs)) <= top_degree:
                basis.append(exps)
        basis[0] = (0,) * len(names)
        basis.sort(key=lambda e: (sum(x * d for x, d in zip(e, degs)), tuple(-x for x in e)))
        self._names = names
        self.basis = basis
        self._index = {e: i for i, e in enumerate(basis)}
        self.degrees = tuple(sum(x * d for x, d in zip(e, degs)) for e in basis)
        self.unit_index = 0

    def __repr__(self):
        return f"TruncatedFreeAlgebra({self.generators}, top_degree={self.top_degree})"

    @property
    def dim(self) -> int:
        return len(self.basis)

    def gen_index(self, name: str) -> int:
        return self._index[tuple(int(n == name) for n in self._names)]

    def mul_basis(self, i: int, j: int) -> dict:
        e = tuple(a + b for a, b in zip(self.basis[i], self.basis[j]))
        k = self._index.get(e)
        return {} if k is None else {k: Fraction(1)}

    def basis_name(self, i: int) -> str:
        e = self.basis[i]
        name = "*".join(n if x == 1 else f"{n}^{x}" for n, x in zip(self._names, e) if x)
        return name or "1"


class PairClass:
    """Sparse sum of ``f_i (x) g_j`` with rational coefficients."""

    __slots__ = ("left", "right", "terms")

    def __init__(self, left, right, terms=None):
        _check_even(left)
        _check_even(right)
        self.left = left
        self.right = right
        clean = {}
        for (i, j), c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[i, j] = c
        self.terms = clean

    @classmethod
    def _raw(cls, left, right, terms):
        p = object.__new__(cls)
        p.left, p.right, p.terms = left, right, terms
        return p

    @classmethod
    def tensor(cls, left, right, x, y) -> PairClass:
        """``x (x) y`` from coordinate vectors (or CohClasses) on each factor."""
        xs = x.coordinates() if isinstance(x, CohClass) else x
        ys = y.coordinates() if isinstance(y, CohClass) else y
        return cls(left, right, {(i, j): a * b for i, a in enumerate(xs) if a
                                 for j, b in enumerate(ys) if b})

    def _same(self, other: PairClass):
        if self.left is not other.left and self.left != other.left:
            raise RingMismatch("left factors differ")
        if self.right is not other.right and self.right != other.right:
            raise RingMismatch("right factors differ")

    def degree(self, key) -> int:
        i, j = key
        return self.left.degrees[i] + self.right.degrees[j]

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, PairClass):
            return NotImplemented
        return (self.left == other.left and self.right == other.right
                and self.terms == other.terms)

    __hash__ = None

    def __add__(self, other: PairClass) -> PairClass:
        self._same(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return PairClass._raw(self.left, self.right, out)

    def __neg__(self) -> PairClass:
        return PairClass._raw(self.left, self.right, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: PairClass) -> PairClass:
        return self + (-other)

    def __mul__(self, other) -> PairClass:
        if not isinstance(other, PairClass):
            c = Fraction(other)
            if not c:
                return PairClass._raw(self.left, self.right, {})
            return PairClass._raw(self.left, self.right, {k: v * c for k, v in self.terms.items()})
        self._same(other)
        lmul, rmul = self.left.mul_basis, self.right.mul_basis
        out: dict = defaultdict(Fraction)
        for (i, j), c in self.terms.items():
            for (k, l), d in other.terms.items():
                lp = lmul(i, k)
                if not lp:
                    continue
                rp = rmul(j, l)
                if not rp:
                    continue
                cd = c * d
                for a, x in lp.items():
                    for b, y in rp.items():
                        out[a, b] += cd * x * y
        return PairClass._raw(self.left, self.right, {k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def homogeneous(self, degree: int) -> PairClass:
        return PairClass._raw(self.left, self.right,
                              {k: c for k, c in self.terms.items() if self.degree(k) == degree})

    def bidegree_part(self, p: int, q: int) -> PairClass:
        return PairClass._raw(self.left, self.right,
                              {(i, j): c for (i, j), c in self.terms.items()
                               if self.left.degrees[i] == p and self.right.degrees[j] == q})

    def swap(self) -> PairClass:
        return PairClass._raw(self.right, self.left, {(j, i): c for (i, j), c in self.terms.items()})

    def __repr__(self):
        return f"PairClass({self.format()})"

    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j) in sorted(self.terms, key=lambda k: (self.degree(k), k)):
            c = self.terms[i, j]
            parts.append(f"{c}*{self.left.basis_name(i)}(x){self.right.basis_name(j)}")
        return " + ".join(parts)

    def to_records(self) -> list:
        return [{"left": i, "right": j, "coeff": str(self.terms[i, j])} for i, j in sorted(self.terms)]

    @classmethod
    def from_records(cls, left, right, records) -> PairClass:
        terms = defaultdict(Fraction)
        for r in records:
            terms[int(r["left"]), int(r["right"])] += Fraction(r["coeff"])
        return cls(left, right, terms)


class PairRing:
    """``H^*(A) (x) H^*(B)`` presented to the Chern calculus as a graded algebra."""

    def __init__(self, left, right):
        _check_even(left)
        _check_even(right)
        self.left = left
        self.right = right
        self.top_degree = left.top_degree + right.top_degree

    def one(self) -> PairClass:
        return PairClass._raw(self.left, self.right, {(0, 0): Fraction(1)})

    def zero(self) -> PairClass:
        return PairClass._raw(self.left, self.right, {})

    def piece(self, x: PairClass, degree: int) -> PairClass:
        return x.homogeneous(degree)

    def constant(self, x: PairClass) -> Fraction:
        return x.terms.get((0, 0), Fraction(0))


class TripleClass:
    """Sparse sum of ``a (x) h (x) b`` on ``M' x S x M''``."""

    __slots__ = ("left", "mid", "right", "terms")

    def __init__(self, left, mid, right, terms=None):
        for ring in (left, mid, right):
            _check_even(ring)
        self.left, self.mid, self.right = left, mid, right
        self.terms = {k: Fraction(c) for k, c in (terms or {}).items() if c}

    @classmethod
    def _raw(cls, left, mid, right, terms):
        t = object.__new__(cls)
        t.left, t.mid, t.right, t.terms = left, mid, right, terms
        return t

    def degree(self, key) -> int:
        a, h, b = key
        return self.left.degrees[a] + self.mid.degrees[h] + self.right.degrees[b]

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, TripleClass):
            return NotImplemented
        return ((self.left, self.mid, self.right) == (other.left, other.mid, other.right)
                and self.terms == other.terms)

    __hash__ = None

    def __add__(self, other: TripleClass) -> TripleClass:
        _same_triple(self, other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return TripleClass._raw(self.left, self.mid, self.right, out)

    def __mul__(self, other: TripleClass) -> TripleClass:
        return triple_mul(self, other)

    def __repr__(self):
        return f"TripleClass({len(self.terms)} terms)"


def _same_triple(x: TripleClass, y: TripleClass):
    for name in ("left", "mid", "right"):
        a, b = getattr(x, name), getattr(y, name)
        if a is not b and a != b:
            raise RingMismatch(f"{name} factors differ")


def _unit_coords(ring) -> int:
    return ring.unit_index if hasattr(ring, "unit_index") else 0


def pullback_12(alpha: PairClass, right) -> TripleClass:
    """``pi_12^* alpha`` for ``alpha`` on ``M' x S``; ``right`` is the ring of ``M''``."""
    u = _unit_coords(right)
    return TripleClass(alpha.left, alpha.right, right,
                       {(a, h, u): c for (a, h), c in alpha.terms.items()})


def pullback_23(alpha: PairClass, left) -> TripleClass:
    """``pi_23^* alpha`` for ``alpha`` on ``M'' x S`` (read as ``S x M''``)."""
    u = _unit_coords(left)
    return TripleClass(left, alpha.right, alpha.left,
                       {(u, h, b): c for (b, h), c in alpha.terms.items()})


def pullback_2(h: CohClass, left, mid, right) -> TripleClass:
    ul, ur = _unit_coords(left), _unit_coords(right)
    return TripleClass(left, mid, right,
                       {(ul, i, ur): c for i, c in enumerate(h.coordinates()) if c})


def triple_mul(x: TripleClass, y: TripleClass) -> TripleClass:
    _same_triple(x, y)
    lmul, mmul, rmul = x.left.mul_basis, x.mid.mul_basis, x.right.mul_basis
    by_mid = defaultdict(list)
    for (a, h, b), c in y.terms.items():
        by_mid[h].append((a, b, c))
    out: dict = defaultdict(Fraction)
    for (a, h, b), c in x.terms.items():
        for h2, rest in by_mid.items():
            mp = mmul(h, h2)
            if not mp:
                continue
            for a2, b2, c2 in rest:
                lp = lmul(a, a2)
                if not lp:
                    continue
                rp = rmul(b, b2)
                if not rp:
                    continue
                cc = c * c2
                for i, u in lp.items():
                    for k, w in mp.items():
                        uw = u * w
                        for j, v in rp.items():
                            f = uw * v
                            out[i, k, j] += cc if f == 1 else cc * f
    return TripleClass._raw(x.left, x.mid, x.right, {k: v for k, v in out.items() if v})


def push_13_product(x: TripleClass, y: TripleClass, weight: CohClass) -> PairClass:
    """``push_13(x . y . pi_2^* weight)`` without forming the triple product.

    Only ``int_S h h' weight`` is needed from the middle factor, so terms are
    grouped by their outer indices and contracted through that pairing.
    """
    _same_triple(x, y)
    mid = x.mid
    w_coords = weight.coordinates()
    pairing = defaultdict(dict)
    for h in range(mid.dim):
        for h2 in range(mid.dim):
            total = Fraction(0)
            for k, u in mid.mul_basis(h, h2).items():
                for i, c in enumerate(w_coords):
                    if c:
                        for j, v in mid.mul_basis(k, i).items():
                            total += u * c * v * mid.integrate_basis(j)
            if total:
                pairing[h][h2] = total
    xg = defaultdict(dict)
    for (a, h, b), c in x.terms.items():
        xg[a, b][h] = c
    yg = defaultdict(dict)
    for (a, h, b), c in y.terms.items():
        yg[a, b][h] = c
    lmul, rmul = x.left.mul_basis, x.right.mul_basis
    out: dict = defaultdict(Fraction)
    for (a, b), hv in xg.items():
        contracted = defaultdict(Fraction)
        for h, c in hv.items():
            for h2, w in pairing.get(h, {}).items():
                contracted[h2] += c * w
        for (a2, b2), hv2 in yg.items():
            lp = lmul(a, a2)
            if not lp:
                continue
            rp = rmul(b, b2)
            if not rp:
                continue
            s = sum((contracted[h2] * c2 for h2, c2 in hv2.items() if h2 in contracted), Fraction(0))
            if not s:
                continue
            for i, u in lp.items():
                for j, v in rp.items():
                    out[i, j] += s * u * v
    return PairClass(x.left, x.right, out)


def push_13(x: TripleClass) -> PairClass:
    """Integrate out the middle factor."""
    out: dict = defaultdict(Fraction)
    integ = x.mid.integrate_basis
    for (a, h, b), c in x.terms.items():
        w = integ(h)
        if w:
            out[a, b] += c * w
    return PairClass(x.left, x.right, out)


def dual_class(alpha: PairClass) -> PairClass:
    """Sign ``(-1)^i`` on each term of total degree ``2i``."""
    return PairClass._raw(alpha.left, alpha.right,
                          {k: (-c if alpha.degree(k) % 4 else c) for k, c in alpha.terms.items()})


@dataclass
class GammaResult:
    cm: PairClass
    cm_minus_1: PairClass
    total: KVector
    pushforward: PairClass


def gamma(alpha1: PairClass, alpha2: PairClass, m: int) -> GammaResult:
    """Degree ``2m`` and ``2m - 2`` parts of the inverted total Chern class."""
    if alpha1.right != alpha2.right:
        raise RingMismatch("both classes must live over the same surface")
    if alpha1.left != alpha2.left:
        raise RingMismatch("both classes must live over the same M")
    if m < 1:
        raise ValueError("m must be positive")
    M, S = alpha1.left, alpha1.right
    if M.top_degree < 2 * m:
        raise TruncationTooLow(f"ring of M is truncated at degree {M.top_degree} < {2 * m}")
    x = pullback_12(dual_class(alpha1), M)
    y = pullback_23(alpha2, M)
    d = push_13_product(x, y, S.todd)
    ring = PairRing(M, M)
    ch = KVector.from_element(ring, d, top=m)
    c = k_negate(ell(ch))
    return GammaResult(c[m], c[m - 1], c, d)


def diagonal_class(ring: FiniteGradedRing) -> PairClass:
    """``sum_a f_a (x) f^a`` over a Poincare-dual pair of bases."""
    return delta_push(ring, ring.unit())


def delta_push(ring: FiniteGradedRing, x: CohClass) -> PairClass:
    """Pushforward along the diagonal: ``sum_a f_a (x) (x . f^a)``."""
    terms = {}
    for a, dual in enumerate(poincare_dual_basis(ring)):
        for j, c in enumerate(ring.mul(x, dual).coordinates()):
            if c:
                terms[a, j] = c
    return PairClass(ring, ring, terms)


def ch_ideal_of_diagonal(ring: FiniteGradedRing) -> PairClass:
    """``ch(I_Delta) = 1 - Delta_*(td^-1)`` on ``S x S``."""
    one = PairClass(ring, ring, {(0, 0): 1})
    return one - delta_push(ring, ring.inverse(ring.todd))


def integrate_pair(p: PairClass) -> Fraction:
    return sum((c * p.left.integrate_basis(i) * p.right.integrate_basis(j)
                for (i, j), c in p.terms.items()), Fraction(0))


def twist_left(alpha: PairClass, line: CohClass) -> PairClass:
    """``alpha . (exp(L) (x) 1)`` for ``L`` a degree-2 class on the left factor."""
    ring = alpha.left
    if line.r or line.s:
        raise ValueError("twisting class must be of pure degree 2")
    e = ring.unit() + line + ring.mul(line, line).scale(Fraction(1, 2))
    return PairClass.tensor(ring, alpha.right, e, [1]) * alpha
