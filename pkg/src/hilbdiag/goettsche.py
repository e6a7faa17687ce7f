"""Betti numbers of Hilbert schemes of points on a simply connected surface.

``b_k(S^[n])`` is the coefficient of ``t^k q^n`` in Goettsche's product

    prod_{m>=1} 1 / ((1 - t^(2m-2) q^m) (1 - t^(2m) q^m)^b2 (1 - t^(2m+2) q^m))

The expansion is done once per ``b2`` at the largest bidegree requested so
far and reused; truncating a larger expansion gives the same coefficients.
"""

from __future__ import annotations

import csv
import io
import json
import threading
from dataclasses import dataclass, field

from .series import Series, SeriesSpace, product_expand


@dataclass(frozen=True)
class SurfaceProfile:
    """A smooth simply connected projective surface, seen through ``b2`` only."""

    b2: int
    name: str = ""

    def __post_init__(self):
        if self.b2 < 0:
            raise ValueError("b2 must be non-negative")


K3 = SurfaceProfile(22, "K3")


def _profile(p) -> SurfaceProfile:
    return p if isinstance(p, SurfaceProfile) else SurfaceProfile(int(p))


def as_integer(c) -> int:
    """Return ``c`` as an int, refusing anything non-integral."""
    if isinstance(c, int):
        return c
    if getattr(c, "denominator", None) == 1:
        return int(c.numerator)
    raise ArithmeticError(f"expected an integral dimension, got {c}")


def gottsche_factors(b2: int, max_n: int):
    for m in range(1, max_n + 1):
        yield (2 * m - 2, m), 1
        yield (2 * m, m), b2
        yield (2 * m + 2, m), 1


def rewritten_factors(b2: int, max_k: int):
    """Factors of the product equal to Goettsche's divided by ``1/(1-q)``."""
    for m in range(1, max_k // 2 + 1):
        yield (2 * m, m + 1), 1
        yield (2 * m, m), b2
        if m >= 2:
            yield (2 * m, m - 1), 1


def bivariate_space(max_k: int, max_n: int) -> SeriesSpace:
    # t carries the cohomological degree; q is bounded only by its own cap.
    return SeriesSpace(("t", "q"), weights=(1, 0), order=max_k, caps=(None, max_n))


def gottsche_series(b2: int, max_k: int, max_n: int) -> Series:
    return product_expand(bivariate_space(max_k, max_n), gottsche_factors(b2, max_n))


_cache: dict[int, Series] = {}
_cache_lock = threading.Lock()


def _covering_series(b2: int, k: int, n: int) -> Series:
    with _cache_lock:
        s = _cache.get(b2)
        if s is not None and s.space.order >= k and s.space.caps[1] >= n:
            return s
        max_k = max(k, s.space.order if s is not None else 0)
        max_n = max(n, s.space.caps[1] if s is not None else 0)
        # grow with some headroom so sweeps over k or n don't re-expand each step
        if s is not None:
            max_k = max(max_k, min(2 * s.space.order, max_k + 8))
            max_n = max(max_n, min(2 * s.space.caps[1], max_n + 4))
        s = gottsche_series(b2, max_k, max_n)
        _cache[b2] = s
        return s


def betti(profile, n: int, k: int) -> int:
    """``b_k(S^[n])``; zero outside ``0 <= k <= 4n``."""
    b2 = _profile(profile).b2
    if n < 0 or k < 0:
        raise ValueError("n and k must be non-negative")
    if k > 4 * n or k % 2:
        return 0
    return as_integer(_covering_series(b2, k, n).coeff((k, n)))


def poincare_polynomial(profile, n: int) -> tuple:
    """Coefficients ``(b_0, ..., b_{4n})`` of the Poincare polynomial of ``S^[n]``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    series = _covering_series(_profile(profile).b2, 4 * n, n)
    return tuple(as_integer(series.coeff((k, n))) for k in range(4 * n + 1))


@dataclass(frozen=True)
class BettiTable:
    b2: int
    max_n: int
    max_k: int
    entries: dict = field(repr=False)

    def __getitem__(self, key) -> int:
        k, n = key
        return self.entries[k, n]

    def columns(self) -> list:
        return list(range(1, self.max_n + 1))

    def rows(self) -> list:
        # odd rows vanish identically for simply connected surfaces
        return list(range(0, self.max_k + 1, 2))

    def cell(self, k: int, n: int) -> str:
        """Printed form of a cell: blank where ``k > 4n``."""
        return "" if k > 4 * n else str(self.entries[k, n])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["k/n"] + self.columns())
        for k in self.rows():
            writer.writerow([k] + [self.cell(k, n) for n in self.columns()])
        return buf.getvalue()

    def to_json(self) -> str:
        payload = {
            "b2": self.b2,
            "n": self.columns(),
            "k": self.rows(),
            "rows": [[None if k > 4 * n else self.entries[k, n] for n in self.columns()]
                     for k in self.rows()],
        }
        return json.dumps(payload, indent=2) + "\n"

    def to_text(self) -> str:
        cells = [["k\\n"] + [str(n) for n in self.columns()]]
        cells += [[str(k)] + [self.cell(k, n) for n in self.columns()] for k in self.rows()]
        widths = [max(len(row[i]) for row in cells) for i in range(len(cells[0]))]
        return "".join(" ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip() + "\n"
                       for row in cells)


def betti_table(profile, max_n: int, max_k: int) -> BettiTable:
    if max_n < 0 or max_k < 0:
        raise ValueError("table bounds must be non-negative")
    b2 = _profile(profile).b2
    series = _covering_series(b2, max_k, max_n)
    entries = {}
    for n in range(1, max_n + 1):
        for k in range(max_k + 1):
            entries[k, n] = as_integer(series.coeff((k, n)))
    return BettiTable(b2, max_n, max_k, entries)


def rewritten_product_check(profile, order_t: int, order_q: int) -> bool:
    """Compare Goettsche's product with ``1/(1-q)`` times the rewritten product."""
    b2 = _profile(profile).b2
    space = bivariate_space(order_t, order_q)
    lhs = product_expand(space, gottsche_factors(b2, order_q))
    rhs = product_expand(space, [((0, 1), 1), *rewritten_factors(b2, order_t)])
    return lhs == rhs


def stabilization_gap(profile, n: int) -> int:
    """``b_n(S^[n]) - b_n(S^[n-2])`` for even ``n >= 4``."""
    if n < 4 or n % 2:
        raise ValueError("stabilization gap is defined for even n >= 4")
    return betti(profile, n, n) - betti(profile, n - 2, n)
