"""Sparse truncated multivariate power series with exact rational coefficients.

A :class:`Series` lives in a :class:`SeriesSpace`, which fixes the variable
names, a positive or zero integer weight per variable, a bound on the total
weighted degree (inclusive) and an optional cap on each variable's exponent.
Every variable has to be bounded by one of the two mechanisms, so the set of
representable monomials is finite.

Coefficients are ``int`` or :class:`fractions.Fraction`; integer inputs stay
integers so that counting problems never leave exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from numbers import Rational
from typing import Iterable, Mapping, Sequence, Union

Coefficient = Union[int, Fraction]
Monomial = tuple  # tuple[int, ...], one exponent per variable


class VariableMismatch(ValueError):
    pass


class TruncationError(ValueError):
    """Raised when a coefficient is requested beyond the truncation order."""


class NonConvergentFactor(ValueError):
    pass


def _coerce(c) -> Coefficient:
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _coerce(Fraction(c))
    if isinstance(c, str):
        return _coerce(Fraction(c))
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


@dataclass(frozen=True)
class SeriesSpace:
    variables: tuple
    weights: tuple
    order: int
    caps: tuple

    def __init__(self, variables: Sequence[str], weights: Sequence[int] | None = None,
                 order: int = 0, caps: Sequence[int | None] | None = None):
        variables = tuple(variables)
        weights = tuple(weights) if weights is not None else (1,) * len(variables)
        caps = tuple(caps) if caps is not None else (None,) * len(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        if len(weights) != len(variables) or len(caps) != len(variables):
            raise ValueError("weights and caps need one entry per variable")
        if any(w < 0 for w in weights):
            raise ValueError("weights must be non-negative")
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        for name, w, cap in zip(variables, weights, caps):
            if cap is not None and cap < 0:
                raise ValueError(f"negative cap on {name}")
            if w == 0 and cap is None:
                raise ValueError(f"variable {name} has weight 0 and no cap")
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "caps", caps)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def degree(self, exps: Monomial) -> int:
        return sum(e * w for e, w in zip(exps, self.weights))

    def contains(self, exps: Monomial) -> bool:
        if self.degree(exps) > self.order:
            return False
        return all(cap is None or e <= cap for e, cap in zip(exps, self.caps))

    def compatible(self, other: SeriesSpace) -> bool:
        return self.variables == other.variables and self.weights == other.weights

    def meet(self, other: SeriesSpace) -> SeriesSpace:
        if not self.compatible(other):
            raise VariableMismatch(
                f"{self.variables}/{self.weights} vs {other.variables}/{other.weights}")
        if self == other:
            return self
        caps = tuple(a if b is None else b if a is None else min(a, b)
                     for a, b in zip(self.caps, other.caps))
        return SeriesSpace(self.variables, self.weights, min(self.order, other.order), caps)

    def with_order(self, order: int, caps: Sequence[int | None] | None = None) -> SeriesSpace:
        return SeriesSpace(self.variables, self.weights, order,
                           self.caps if caps is None else caps)

    def monomial(self, exps: Monomial | Mapping[str, int]) -> Monomial:
        if isinstance(exps, Mapping):
            unknown = set(exps) - set(self.variables)
            if unknown:
                raise VariableMismatch(f"unknown variables {sorted(unknown)}")
            return tuple(int(exps.get(v, 0)) for v in self.variables)
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.nvars:
            raise VariableMismatch(f"expected {self.nvars} exponents, got {len(exps)}")
        if any(e < 0 for e in exps):
            raise ValueError("exponents must be non-negative")
        return exps

    # constructors

    def zero(self) -> Series:
        return Series._raw(self, {})

    def one(self) -> Series:
        return self.const(1)

    def const(self, c) -> Series:
        c = _coerce(c)
        return Series._raw(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str) -> Series:
        exps = tuple(int(v == name) for v in self.variables)
        if name not in self.variables:
            raise VariableMismatch(f"unknown variable {name}")
        return self.term(exps, 1)

    def term(self, exps, c=1) -> Series:
        exps = self.monomial(exps)
        c = _coerce(c)
        if not c or not self.contains(exps):
            return self.zero()
        return Series._raw(self, {exps: c})

    def from_dict(self, coeffs: Mapping) -> Series:
        out: dict = {}
        for exps, c in coeffs.items():
            exps = self.monomial(exps)
            c = _coerce(c)
            if c and self.contains(exps):
                out[exps] = out.get(exps, 0) + c
        return Series._raw(self, {m: c for m, c in out.items() if c})


class Series:
    """An immutable truncated power series; see the module docstring."""

    __slots__ = ("space", "_coeffs")

    def __init__(self, space: SeriesSpace, coeffs: Mapping | None = None):
        built = space.from_dict(coeffs or {})
        self.space = space
        self._coeffs = built._coeffs

    @classmethod
    def _raw(cls, space: SeriesSpace, coeffs: dict) -> Series:
        s = object.__new__(cls)
        s.space = space
        s._coeffs = coeffs
        return s

    # inspection

    @property
    def order(self) -> int:
        return self.space.order

    def items(self):
        return self._coeffs.items()

    def terms(self) -> dict:
        return dict(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def constant(self) -> Coefficient:
        return self._coeffs.get((0,) * self.space.nvars, 0)

    def coeff(self, exps) -> Coefficient:
        exps = self.space.monomial(exps)
        if not self.space.contains(exps):
            raise TruncationError(
                f"monomial {exps} lies beyond the truncation of this series "
                f"(order {self.space.order}, caps {self.space.caps})")
        return self._coeffs.get(exps, 0)

    def homogeneous(self, degree: int) -> Series:
        deg = self.space.degree
        return Series._raw(self.space, {m: c for m, c in self._coeffs.items() if deg(m) == degree})

    def truncate(self, order: int, caps: Sequence[int | None] | None = None) -> Series:
        space = self.space.meet(self.space.with_order(order, caps))
        return Series._raw(space, {m: c for m, c in self._coeffs.items() if space.contains(m)})

    def __eq__(self, other) -> bool:
        if isinstance(other, Series):
            return self.space == other.space and self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self._coeffs == ({(0,) * self.space.nvars: other} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash((self.space, frozenset(self._coeffs.items())))

    def __repr__(self) -> str:
        return f"Series({self.format()}, order={self.space.order})"

    def format(self) -> str:
        if not self._coeffs:
            return "0"
        deg = self.space.degree
        parts = []
        for m in sorted(self._coeffs, key=lambda m: (deg(m), m)):
            c = self._coeffs[m]
            mono = "*".join(v if e == 1 else f"{v}^{e}"
                            for v, e in zip(self.space.variables, m) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # arithmetic

    def _lift(self, other) -> Series:
        if isinstance(other, Series):
            return other
        return self.space.const(other)

    def __add__(self, other) -> Series:
        other = self._lift(other)
        space = self.space.meet(other.space)
        out = {m: c for m, c in self._coeffs.items() if space.contains(m)}
        for m, c in other._coeffs.items():
            if not space.contains(m):
                continue
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Series._raw(space, out)

    __radd__ = __add__

    def __neg__(self) -> Series:
        return Series._raw(self.space, {m: -c for m, c in self._coeffs.items()})

    def __sub__(self, other) -> Series:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> Series:
        return self._lift(other) - self

    def scale(self, c) -> Series:
        c = _coerce(c)
        if not c:
            return self.space.zero()
        return Series._raw(self.space, {m: v * c for m, v in self._coeffs.items()})

    def __mul__(self, other) -> Series:
        if not isinstance(other, Series):
            return self.scale(other)
        space = self.space.meet(other.space)
        return Series._raw(space, _convolve(space, self._coeffs, other._coeffs))

    def __rmul__(self, other) -> Series:
        return self.scale(other)

    def __pow__(self, n: int) -> Series:
        if n < 0:
            return self.inv() ** (-n)
        result = self.space.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other) -> Series:
        if isinstance(other, Series):
            return self * other.inv()
        return self.scale(Fraction(1) / _coerce(other))

    def inv(self) -> Series:
        """Multiplicative inverse up to the truncation of ``self``.

        Writes ``self = c0 * (1 - u)`` and sums the geometric series in ``u``;
        every variable is bounded, so ``u**j`` vanishes for large ``j``.
        """
        c0 = self.constant()
        if not c0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv_c0 = Fraction(1) / c0
        inv_c0 = _coerce(inv_c0)
        u = self.space.one() - self.scale(inv_c0)
        result = self.space.one()
        power = result
        while True:
            power = power * u
            if not power:
                break
            result = result + power
        return result.scale(inv_c0)

    def map_coefficients(self, fn) -> Series:
        out = {}
        for m, c in self._coeffs.items():
            v = _coerce(fn(c))
            if v:
                out[m] = v
        return Series._raw(self.space, out)


def _convolve(space: SeriesSpace, a: dict, b: dict) -> dict:
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    order = space.order
    weights = space.weights
    capped = [(i, cap) for i, cap in enumerate(space.caps) if cap is not None]
    bl = sorted(((sum(e * w for e, w in zip(m, weights)), m, c) for m, c in b.items()),
                key=lambda t: t[0])
    out: dict = {}
    get = out.get
    for ma, ca in a.items():
        da = sum(e * w for e, w in zip(ma, weights))
        room = order - da
        for db, mb, cb in bl:
            if db > room:
                break
            m = tuple(x + y for x, y in zip(ma, mb))
            if capped and any(m[i] > cap for i, cap in capped):
                continue
            out[m] = get(m, 0) + ca * cb
    return {m: c for m, c in out.items() if c}


def geometric_factor(space: SeriesSpace, exps, power: int = 1) -> Series:
    """Expansion of ``(1 - x**exps) ** (-power)`` inside ``space``."""
    exps = space.monomial(exps)
    if not any(exps):
        raise NonConvergentFactor("geometric factor needs a non-constant monomial")
    if power < 1:
        raise ValueError("power must be at least 1")
    out = {}
    j = 0
    m = (0,) * space.nvars
    while space.contains(m):
        out[m] = comb(power + j - 1, j)
        j += 1
        m = tuple(j * e for e in exps)
    return Series._raw(space, out)


def product_expand(space: SeriesSpace, factors: Iterable[tuple]) -> Series:
    """Product of ``(1 - x**exps) ** (-power)`` over ``(exps, power)`` pairs.

    A factor whose monomial already lies outside ``space`` equals 1 there and
    is skipped, which is what makes infinite products finite.  Power 0 factors
    are skipped too.
    """
    result = space.one()
    for exps, power in factors:
        exps = space.monomial(exps)
        if not any(exps):
            raise NonConvergentFactor("geometric factor needs a non-constant monomial")
        if power == 0 or not space.contains(exps):
            continue
        result = result * geometric_factor(space, exps, power)
    return result
