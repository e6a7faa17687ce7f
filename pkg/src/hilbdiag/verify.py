"""Named verification suites.

Each suite returns a list of :class:`Check` records in a fixed order.  All
randomness comes from ``random.Random(seed)`` so reports are reproducible
byte for byte.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from fractions import Fraction

from . import cherncalc as cc
from .goettsche import K3, betti, betti_table, poincare_polynomial, rewritten_product_check, stabilization_gap
from .stablering import (
    c_k_poly, ceil_quarter, example3_check, finite_dim, ideal_dim, ideal_dim_oracle,
    in_ideal_window, stable_dim, z_series,
)
from .surface import FiniteGradedRing, make_k3, random_gram
from .kunneth import ch_ideal_of_diagonal, diagonal_class, gamma, twist_left

# b_k(S^[n]) for a K3 surface, rows k = 0, 2, ..., 18 and columns n = 1..9;
# None marks the blank cells k > 4n.
K3_BETTI_TABLE = (
    (1, 1, 1, 1, 1, 1, 1, 1, 1),
    (22, 23, 23, 23, 23, 23, 23, 23, 23),
    (1, 276, 299, 300, 300, 300, 300, 300, 300),
    (None, 23, 2554, 2852, 2875, 2876, 2876, 2876, 2876),
    (None, 1, 299, 19298, 22127, 22426, 22449, 22450, 22450),
    (None, None, 23, 2852, 125604, 147431, 150283, 150582, 150605),
    (None, None, 1, 300, 22127, 727606, 872162, 894288, 897141),
    (None, None, None, 23, 2875, 147431, 3834308, 4684044, 4831451),
    (None, None, None, 1, 300, 22426, 872162, 18669447, 23203208),
    (None, None, None, None, 23, 2876, 150283, 4684044, 84967890),
)

SUITES = ("table", "stable", "ideal", "chern", "diagonal", "example3")


@dataclass
class Check:
    check: str
    citation: str
    expected: object
    computed: object
    passed: bool

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] {self.check} ({self.citation}): "
                f"expected {self.expected}, computed {self.computed}")

    def as_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


def _check(name, citation, expected, computed) -> Check:
    return Check(name, citation, expected, computed, expected == computed)


# ---------------------------------------------------------------- table

def table_suite(seed: int = 0) -> list:
    table = betti_table(K3, 9, 18)
    checks = []
    for row, k in enumerate(range(0, 19, 2)):
        for n in range(1, 10):
            printed = K3_BETTI_TABLE[row][n - 1]
            expected = 0 if printed is None else printed
            checks.append(_check(f"b_{k}(S^[{n}])", "K3 Betti table", expected, table[k, n]))
    return checks


# ---------------------------------------------------------------- stable

def stable_suite(seed: int = 0) -> list:
    b2 = K3.b2
    checks = []
    for k in range(0, 17, 2):
        values = sorted({betti(b2, n, k) for n in range(max(k, 1), 21)})
        checks.append(_check(f"b_{k}(S^[n]) = dim R^[inf]_{k} for {max(k, 1)} <= n <= 20",
                             "stable Betti numbers", [stable_dim(b2, k)], values))
    for n in (4, 6, 8):
        checks.append(_check(f"b_{n}(S^[{n}]) - b_{n}(S^[{n - 2}])", "stabilization gap",
                             24, stabilization_gap(b2, n)))
    checks.append(_check("Goettsche product = 1/(1-q) x rewritten product to t^16 q^16",
                         "rewritten generating function", True, rewritten_product_check(b2, 16, 16)))
    for k in range(0, 17, 2):
        c = c_k_poly(b2, k)
        checks.append(_check(f"c_{k}(q): degree, lowest power, value at 1",
                             "c_k(q) structure", [k, ceil_quarter(k), stable_dim(b2, k)],
                             [c.degree, c.lowest_power, c(1)]))
    for k in range(2, 15, 2):
        diffs = [stable_dim(b2, k) - betti(b2, n, k) for n in range(1, k)]
        sums = [c_k_poly(b2, k).leading_sum(k - n) for n in range(1, k)]
        checks.append(_check(f"dim R^[inf]_{k} - b_{k}(S^[n]) = a_0 + ... + a_{{k-n-1}}, n < {k}",
                             "leading coefficient sums", diffs, sums))
    z = z_series(b2, 8)
    checks.append(_check("z-series head", "z-series expansion", [1, 23, 299],
                         [z.coeff((i,)) for i in range(3)]))
    checks.append(_check("z-series head is 1, b2+1, (b2+1)(b2+4)/2", "z-series expansion",
                         [1, b2 + 1, (b2 + 1) * (b2 + 4) // 2], [z.coeff((i,)) for i in range(3)]))
    checks.append(_check("coeff z^i = dim R^[inf]_2i - dim R^[inf]_(2i-4), i <= 8",
                         "z-series expansion",
                         [stable_dim(b2, 2 * i) - (stable_dim(b2, 2 * i - 4) if i >= 2 else 0)
                          for i in range(9)],
                         [z.coeff((i,)) for i in range(9)]))
    dual = all(p == p[::-1] for p in (poincare_polynomial(b2, n) for n in range(10)))
    checks.append(_check("Poincare duality b_k = b_{4n-k}, n <= 9", "Poincare duality", True, dual))
    return checks


# ---------------------------------------------------------------- ideal

def ideal_suite(seed: int = 0, ideal_formula=ideal_dim) -> list:
    b2 = K3.b2
    checks = []
    for n in range(2, 31):
        for k in range(n + 1, 4 * n // 3 + 1):
            if k % 2:
                continue
            oracle = finite_dim(b2, n, k) - betti(b2, n, k)
            checks.append(_check(f"dim I_{k} on S^[{n}]", "relation ideal dimension",
                                 oracle, ideal_formula(b2, n, k)))
    for n in range(1, 31):
        k = n + 1 if n % 2 else n + 2
        expected = 1 if n % 2 else b2 + 2
        via = ideal_formula(b2, n, k) if in_ideal_window(n, k) else ideal_dim_oracle(b2, n, k)
        checks.append(_check(f"first relations I_{k} on S^[{n}]", "first relation degree",
                             expected, via))
    no_low = all(ideal_dim_oracle(b2, n, k) == 0 for n in range(1, 21) for k in range(n + 1))
    checks.append(_check("no relations in degree <= n, n <= 20", "injectivity in low degree",
                         True, no_low))
    return checks


# ---------------------------------------------------------------- example3

def example3_suite(seed: int = 0) -> list:
    report = example3_check(K3.b2)
    v = report.values
    return [
        _check("dim Sym^2 H^2", "S^[3] dimension count", 276, v["sym2"]),
        _check("dim Wedge^2 H^2", "S^[3] dimension count", 253, v["wedge2"]),
        _check("dim V(2)", "S^[3] dimension count", 275, v["v2"]),
        _check("dim Sym^3 H^2", "S^[3] dimension count", 2300, v["sym3"]),
        _check("276 + 23 = b_4(S^[3])", "S^[3] dimension count", 299, v["sym2 + h2"]),
        _check("b_4(S^[3])", "S^[3] dimension count", 299, v["b4"]),
        _check("2300 + 1 + 253 = b_6(S^[3])", "S^[3] dimension count", 2554, v["sym3 + 1 + wedge2"]),
        _check("b_6(S^[3])", "S^[3] dimension count", 2554, v["b6"]),
        _check("dim V(2) > b_6 - dim Sym^3", "S^[3] dimension count", True, v["v2"] > v["b6"] - v["sym3"]),
    ]


# ---------------------------------------------------------------- chern

def random_fraction(rng: random.Random, size: int = 5) -> Fraction:
    return Fraction(rng.randint(-size, size), rng.randint(1, size))


def random_homogeneous(rng: random.Random, algebra: cc.GradedAlgebra, degree: int, density=0.7):
    """Random element of pure ``degree`` with small rational coefficients."""
    space = algebra.space
    terms = {}

    def walk(i, rest, exps):
        if i == space.nvars:
            if rest == 0 and rng.random() < density:
                terms[tuple(exps)] = random_fraction(rng)
            return
        w = space.weights[i]
        for e in range(rest // w + 1):
            walk(i + 1, rest - e * w, exps + [e])

    walk(0, degree, [])
    return space.from_dict(terms)


def random_character(rng, algebra, top: int | None = None) -> cc.KVector:
    top = algebra.top_degree // 2 if top is None else top
    pieces = [random_homogeneous(rng, algebra, 2 * i) for i in range(1, top + 1)]
    return cc.KVector.character(algebra, random_fraction(rng), pieces)


def random_total_chern(rng, algebra, top: int | None = None) -> cc.KVector:
    top = algebra.top_degree // 2 if top is None else top
    pieces = [random_homogeneous(rng, algebra, 2 * i) for i in range(1, top + 1)]
    return cc.KVector.total_chern(algebra, pieces)


def chern_suite(seed: int = 0, trials: int = 50) -> list:
    rng = random.Random(seed)
    checks = []
    alg12 = cc.GradedAlgebra({"x": 2, "y": 4, "z": 6}, 12)
    ok_fwd = ok_back = ok_whitney = True
    for _ in range(10):
        ch = random_character(rng, alg12)
        ok_fwd &= cc.ell_inverse(cc.ell(ch), ch.rank) == ch
        c = random_total_chern(rng, alg12)
        ok_back &= cc.ell(cc.ell_inverse(c, random_fraction(rng))) == c
        ch2 = random_character(rng, alg12)
        ok_whitney &= cc.ell(ch + ch2) == cc.ell(ch) * cc.ell(ch2)
    checks.append(_check("ell_inverse(ell(ch)) = ch to degree 12", "Newton identities", True, ok_fwd))
    checks.append(_check("ell(ell_inverse(c)) = c to degree 12", "Newton identities", True, ok_back))
    checks.append(_check("ell(ch1 + ch2) = ell(ch1) ell(ch2)", "Whitney sum formula", True, ok_whitney))

    alg16 = cc.GradedAlgebra({"x": 2, "y": 4}, 16)
    failures = []
    for trial in range(trials):
        c = random_total_chern(rng, alg16)
        neg = cc.k_negate(c)
        for m in range(1, 9):
            if cc.delta_det(1, m, c) != neg[m] * (-1) ** m:
                failures.append((trial, m))
    checks.append(_check(f"Delta_1^(m) = (-1)^m c_m(-E), m <= 8, {trials} inputs",
                         "Porteous determinant", [], failures))

    ok_split = True
    for r in range(1, 6):
        roots = cc.GradedAlgebra({f"x{i}": 2 for i in range(1, r + 1)}, 12)
        xs = [roots.gen(f"x{i}") for i in range(1, r + 1)]
        ch = cc.KVector.character(roots, 0)
        for x in xs:
            ch = ch + cc.exp_class(roots, x)
        product = roots.one()
        for x in xs:
            product = product * (roots.one() + x)
        ok_split &= cc.ell(ch) == cc.KVector.from_element(roots, product, cc.TOTAL_CHERN)
    checks.append(_check("ell(sum exp(x_i)) = prod (1 + x_i), up to 5 roots",
                         "splitting principle", True, ok_split))
    return checks


# ---------------------------------------------------------------- diagonal

def random_line(rng: random.Random, ring: FiniteGradedRing):
    return ring.cls(l=[random_fraction(rng) for _ in range(ring.b2)])


def diagonal_checks(ring: FiniteGradedRing, label: str) -> list:
    alpha = ch_ideal_of_diagonal(ring)
    result = gamma(alpha, alpha, 2)
    diag = diagonal_class(ring)
    diff = result.cm - diag
    return [
        _check(f"c_2 = [diagonal] on S x S ({label})", "diagonal formula, n = 1",
               0, len(diff.terms)),
        _check(f"c_1 = 0 on S x S ({label})", "diagonal formula, n = 1",
               0, len(result.cm_minus_1.terms)),
    ]


def diagonal_suite(seed: int = 0, grams: int = 5, twists: int = 20, surface=None) -> list:
    rng = random.Random(seed)
    ring = surface if surface is not None else make_k3()
    checks = diagonal_checks(ring, "given Gram matrix")
    for i in range(grams):
        checks += diagonal_checks(FiniteGradedRing(random_gram(rng, ring.b2)), f"random Gram #{i + 1}")
    alpha = ch_ideal_of_diagonal(ring)
    base = gamma(alpha, alpha, 2).cm
    moved = 0
    for _ in range(twists):
        l1, l2 = random_line(rng, ring), random_line(rng, ring)
        if gamma(twist_left(alpha, l1), twist_left(alpha, l2), 2).cm != base:
            moved += 1
    checks.append(_check(f"gamma unchanged by {twists} rational twists", "twist invariance", 0, moved))
    zero = gamma(alpha * 0, alpha, 2)
    checks.append(_check("gamma(0, alpha) has c_2 = 0", "diagonal formula", 0, len(zero.cm.terms)))
    return checks


def run_suite(name: str, seed: int = 0, **kwargs) -> list:
    if name == "all":
        out = []
        for suite in SUITES:
            out += run_suite(suite, seed)
        return out
    runners = {
        "table": table_suite,
        "stable": stable_suite,
        "ideal": ideal_suite,
        "chern": chern_suite,
        "diagonal": diagonal_suite,
        "example3": example3_suite,
    }
    if name not in runners:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    return runners[name](seed, **kwargs)
