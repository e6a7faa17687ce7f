"""Command line entry point: ``hilbdiag <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import cherncalc as cc
from .goettsche import betti, betti_table, poincare_polynomial
from .kunneth import ch_ideal_of_diagonal, diagonal_class, gamma
from .stablering import (
    InvariantViolation, OutsideWindowError, c_k_poly, ideal_dim, ideal_dim_oracle, stable_dim,
    z_series,
)
from .surface import FiniteGradedRing, load_surface, make_k3, random_gram
from .verify import SUITES, run_suite

SURFACE_ENV = "HILBDIAG_SURFACE"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    surface: str | None = None
    format: str = "text"
    seed: int = 0

    def load_surface(self) -> FiniteGradedRing:
        path = self.surface or os.environ.get(SURFACE_ENV)
        if not path:
            return make_k3()
        try:
            return load_surface(path)
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"cannot read surface config {path}: {exc}") from exc


def non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _emit(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# ---------------------------------------------------------------- counting commands

def cmd_betti(args) -> int:
    _emit(str(betti(args.b2, args.n, args.k)))
    return EXIT_OK


def cmd_poincare(args) -> int:
    _emit(" ".join(map(str, poincare_polynomial(args.b2, args.n))))
    return EXIT_OK


def cmd_table(args) -> int:
    table = betti_table(args.b2, args.max_n, args.max_k)
    _emit({"csv": table.to_csv, "json": table.to_json, "text": table.to_text}[args.format]())
    return EXIT_OK


def cmd_stable_dim(args) -> int:
    _emit(str(stable_dim(args.b2, args.k)))
    return EXIT_OK


def cmd_ideal_dim(args) -> int:
    if args.oracle:
        _emit(str(ideal_dim_oracle(args.b2, args.n, args.k)))
        return EXIT_OK
    try:
        _emit(str(ideal_dim(args.b2, args.n, args.k)))
    except OutsideWindowError as exc:
        raise UsageError(f"{exc} (pass --oracle)") from exc
    return EXIT_OK


def cmd_ckq(args) -> int:
    if args.k % 2:
        raise UsageError("k must be even")
    poly = c_k_poly(args.b2, args.k)
    if args.format == "json":
        _emit(json.dumps({"k": poly.k, "lowest_power": poly.lowest_power,
                          "coefficients": list(poly.coefficients)}))
    else:
        terms = [f"{a}*q^{poly.k - i}" for i, a in enumerate(poly.coefficients) if a]
        _emit(" + ".join(terms))
    return EXIT_OK


def cmd_z_series(args) -> int:
    z = z_series(args.b2, args.order)
    _emit(" ".join(str(z.coeff((i,))) for i in range(args.order + 1)))
    return EXIT_OK


# ---------------------------------------------------------------- chern classes

def read_classes(path: str, form: str, rank=None, truncation=None) -> cc.KVector:
    """Parse the JSON class format.

    ``{"generators": {"x": 2}, "truncation": 8, "rank": "1",
    "pieces": [{"degree": 2, "terms": [{"monomial": {"x": 1}, "coeff": "1"}]}]}``
    """
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        data = json.loads(text)
        gens = data["generators"]
        pieces = data.get("pieces", [])
        top = truncation if truncation is not None else data.get(
            "truncation", max([p["degree"] for p in pieces] + [0]))
        algebra = cc.GradedAlgebra(gens, int(top))
        graded = {}
        for piece in pieces:
            degree = int(piece["degree"])
            if degree <= 0 or degree % 2:
                raise ValueError(f"piece degree must be positive and even, got {degree}")
            element = algebra.element({tuple(int(t["monomial"].get(g, 0)) for g in gens): Fraction(t["coeff"])
                                       for t in piece["terms"]})
            if algebra.piece(element, degree) != element:
                raise ValueError(f"terms of the degree-{degree} piece have other degrees")
            graded[degree // 2] = graded.get(degree // 2, algebra.zero()) + element
        top_half = algebra.top_degree // 2
        body = [graded.get(i, algebra.zero()) for i in range(1, top_half + 1)]
        if form == cc.CHARACTER:
            r = rank if rank is not None else data.get("rank", "0")
            return cc.KVector.character(algebra, Fraction(r), body)
        return cc.KVector.total_chern(algebra, body)
    except (OSError, ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot read classes from {path}: {exc}") from exc


def element_terms(algebra: cc.GradedAlgebra, x) -> list:
    names = list(algebra.generators)
    out = []
    for exps, c in sorted(x.items()):
        out.append({"monomial": {n: e for n, e in zip(names, exps) if e}, "coeff": str(c)})
    return out


def classes_payload(v: cc.KVector) -> dict:
    alg = v.algebra
    payload = {"form": v.form, "generators": alg.generators, "truncation": alg.top_degree}
    if v.form == cc.CHARACTER:
        payload["rank"] = str(v.rank)
    payload["pieces"] = [{"degree": 2 * i, "terms": element_terms(alg, v[i])}
                         for i in range(1, v.top + 1)]
    return payload


def _print_classes(v: cc.KVector, fmt: str):
    if fmt == "json":
        _emit(json.dumps(classes_payload(v), indent=2))
        return
    label = "ch" if v.form == cc.CHARACTER else "c"
    for i, x in enumerate(v.pieces):
        _emit(f"{label}_{i} = {x.format()}")


def cmd_chern(args) -> int:
    if args.chern_command == "ch-to-c":
        ch = read_classes(args.input, cc.CHARACTER, truncation=args.truncation)
        _print_classes(cc.ell(ch), args.format)
    elif args.chern_command == "c-to-ch":
        c = read_classes(args.input, cc.TOTAL_CHERN, truncation=args.truncation)
        _print_classes(cc.ell_inverse(c, Fraction(args.rank)), args.format)
    elif args.chern_command == "negate":
        c = read_classes(args.input, cc.TOTAL_CHERN, truncation=args.truncation)
        _print_classes(cc.k_negate(c), args.format)
    else:
        c = read_classes(args.input, cc.TOTAL_CHERN, truncation=args.truncation)
        det = cc.delta_det(args.t, args.size, c)
        if args.format == "json":
            _emit(json.dumps({"t": args.t, "size": args.size, "degree": 2 * args.t * args.size,
                              "terms": element_terms(c.algebra, det)}, indent=2))
        else:
            _emit(det.format())
    return EXIT_OK


# ---------------------------------------------------------------- diagonal

def _diag_report(ring: FiniteGradedRing, label: str, fmt: str) -> tuple:
    alpha = ch_ideal_of_diagonal(ring)
    result = gamma(alpha, alpha, 2)
    diag = diagonal_class(ring)
    diff = result.cm - diag
    ok = not diff and not result.cm_minus_1
    if fmt == "json":
        record = {"surface": label, "b2": ring.b2, "c_m": result.cm.to_records(),
                  "diagonal": diag.to_records(), "difference": diff.to_records(),
                  "c_m_minus_1": result.cm_minus_1.to_records(), "pass": ok}
        return ok, record
    lines = [f"== {label} (b2 = {ring.b2})",
             f"c_m          = {result.cm.format()}",
             f"diagonal     = {diag.format()}",
             f"difference   = {diff.format()}",
             f"c_(m-1)      = {result.cm_minus_1.format()}",
             f"result       = {'PASS' if ok else 'FAIL'}"]
    return ok, "\n".join(lines)


def cmd_diag_check(args) -> int:
    config = RunConfig(args.surface, args.format, args.seed)
    ring = config.load_surface()
    rng = random.Random(config.seed)
    reports = [_diag_report(ring, "surface", args.format)]
    for i in range(args.trials):
        other = FiniteGradedRing(random_gram(rng, ring.b2), ring.todd)
        reports.append(_diag_report(other, f"random Gram #{i + 1}", args.format))
    ok = all(r[0] for r in reports)
    if args.format == "json":
        _emit(json.dumps([r[1] for r in reports], indent=2))
    else:
        _emit("\n".join(r[1] for r in reports))
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------- verify

def cmd_verify(args) -> int:
    kwargs = {}
    if args.suite == "diagonal" and (args.surface or os.environ.get(SURFACE_ENV)):
        kwargs["surface"] = RunConfig(args.surface).load_surface()
    checks = run_suite(args.suite, args.seed, **kwargs)
    failed = [c for c in checks if not c.passed]
    if args.format == "json":
        _emit(json.dumps([c.as_dict() for c in checks], indent=2, default=str))
    else:
        for c in checks:
            _emit(c.line())
        _emit(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    return EXIT_OK if not failed else EXIT_FAIL


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hilbdiag",
        description="Betti numbers of Hilbert schemes of points, stable-ring dimensions "
                    "and Chern class calculus.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_b2(p):
        p.add_argument("--b2", type=non_negative, default=22, help="second Betti number of S")
        return p

    p = with_b2(sub.add_parser("betti", help="b_k(S^[n])"))
    p.add_argument("--n", type=non_negative, required=True)
    p.add_argument("--k", type=non_negative, required=True)
    p.set_defaults(func=cmd_betti)

    p = with_b2(sub.add_parser("poincare", help="(b_0, ..., b_4n) of S^[n]"))
    p.add_argument("--n", type=non_negative, required=True)
    p.set_defaults(func=cmd_poincare)

    p = with_b2(sub.add_parser("table", help="table of b_k(S^[n])"))
    p.add_argument("--max-n", type=non_negative, default=9)
    p.add_argument("--max-k", type=non_negative, default=18)
    p.add_argument("--format", choices=("csv", "json", "text"), default="text")
    p.set_defaults(func=cmd_table)

    p = with_b2(sub.add_parser("stable-dim", help="dim R^[inf]_k"))
    p.add_argument("--k", type=non_negative, required=True)
    p.set_defaults(func=cmd_stable_dim)

    p = with_b2(sub.add_parser("ideal-dim", help="dim I_k of the relation ideal of S^[n]"))
    p.add_argument("--n", type=positive, required=True)
    p.add_argument("--k", type=non_negative, required=True)
    p.add_argument("--oracle", action="store_true", help="use dim R^[n]_k - b_k(S^[n])")
    p.set_defaults(func=cmd_ideal_dim)

    p = with_b2(sub.add_parser("ckq", help="c_k(q), highest power of q first"))
    p.add_argument("--k", type=non_negative, required=True)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_ckq)

    p = with_b2(sub.add_parser("z-series", help="coefficients of the z-series"))
    p.add_argument("--order", type=non_negative, default=8)
    p.set_defaults(func=cmd_z_series)

    p = sub.add_parser("chern", help="Chern character / Chern class conversions")
    csub = p.add_subparsers(dest="chern_command", required=True)
    for name, helptext in (("ch-to-c", "total Chern class of a Chern character"),
                           ("c-to-ch", "Chern character of a total Chern class"),
                           ("negate", "c(-E) from c(E)"),
                           ("delta", "Porteous determinant Delta_t^(size)")):
        q = csub.add_parser(name, help=helptext)
        q.add_argument("--input", required=True, help="JSON file, or - for stdin")
        q.add_argument("--truncation", type=non_negative, default=None)
        q.add_argument("--format", choices=("json", "text"), default="json")
        if name == "c-to-ch":
            q.add_argument("--rank", required=True, type=Fraction)
        if name == "delta":
            q.add_argument("--t", type=positive, required=True)
            q.add_argument("--size", type=positive, required=True)
    p.set_defaults(func=cmd_chern)

    p = sub.add_parser("diag-check", help="diagonal formula on S x S")
    p.add_argument("--surface", default=None, help=f"surface JSON (default: ${SURFACE_ENV} or K3)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=non_negative, default=0, help="extra random Gram matrices")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_diag_check)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--surface", default=None)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"hilbdiag: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvariantViolation, ArithmeticError) as exc:
        print(f"hilbdiag: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
